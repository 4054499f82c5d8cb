#!/usr/bin/env python3
# Copyright 2026 The compsearch Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the offline fixture corpus under fixtures/.

Four mock history databases, each with its own search-page markup, paging
scheme and citation style. Output is a pure function of this script.

    python3 tools/make_fixtures.py [--out fixtures]
"""

import argparse
import json
import pathlib
import random
import shutil

QUERIES = {
    # query text: (dir slug, topic, file stem, keyword phrase)
    "christopher columbus": ("christopher+columbus", "exploration",
                             "christopher_columbus", "Christopher Columbus"),
    "slave trade": ("slave+trade", "slavery", "slave_trade", "slave trade"),
    "WWI": ("wwi", "ww1-era", "wwi", "WWI"),
    "WWII": ("wwii", "ww2-era", "wwii", "WWII"),
}

# Hits per database per query; None means the database does not cover it.
COUNTS = {
    "ew": {"christopher columbus": 33, "slave trade": 27, "WWI": 32, "WWII": 31},
    "ya": {"christopher columbus": 46, "slave trade": 56, "WWI": 45, "WWII": 37},
    "ae": {"christopher columbus": 8, "slave trade": 13, "WWI": None, "WWII": None},
    "jcb": {"christopher columbus": 54, "slave trade": 43, "WWI": 36, "WWII": 41},
}

# Completion offsets in seconds, as recorded on the reference machine.
TIMINGS = {
    "christopher columbus": {"ew": 2.88, "ya": 3.78, "ae": 4.75, "jcb": 5.21},
    "slave trade": {"ew": 5.84, "ya": 4.36, "ae": 5.35, "jcb": 3.37},
    "WWI": {"ew": 7.34, "ya": 5.74, "jcb": 4.18},
    "WWII": {"ew": 7.28, "ya": 6.35, "jcb": 4.72},
}

SUBJECTS = {
    "christopher columbus": ["voyage", "Genoa", "Hispaniola", "caravel",
                             "Santa Maria", "Isabella", "Ferdinand", "Atlantic"],
    "slave trade": ["Middle Passage", "Atlantic", "plantation", "abolition",
                    "Liverpool", "Gold Coast", "manifest", "Wilberforce"],
    "WWI": ["trench", "Somme", "Verdun", "armistice", "Gallipoli",
            "Western Front", "conscription", "Versailles"],
    "WWII": ["Normandy", "Blitz", "Pacific", "rationing", "Stalingrad",
             "Midway", "Yalta", "home front"],
}

FILLER = ("archive letter ledger map engraving pamphlet diary chronicle "
          "register census treaty sermon broadside account report memoir "
          "survey print woodcut logbook petition").split()

VERBS = ("describes records depicts recounts surveys reproduces documents "
         "collects annotates illustrates").split()

PUBLISHERS = ["Hakluyt Society", "Clarendon Press", "Harper & Brothers",
              "Longmans, Green", "J. Murray", "Osgood & Co."]

AUTHORS = ["A. Marsh", "B. Okafor", "C. Lindqvist", "D. Ferreira",
           "E. Nakamura", "F. O'Connell", "G. Haddad", "H. Varga",
           "I. Mbeki", "J. Castellanos"]

DATABASES = [
    {
        "name": "ew",
        "topic_tags": ["history", "exploration", "slavery", "ww1-era", "ww2-era"],
        "per_page": 15,
        "result_page_limit": 5,
        "query_url_template": "file:ew/search/{QUERY}/page-{PAGE}.html",
        "link_pattern": '<a class="hit" href="([^"]+)"',
        "citation_pattern": '<p class="source">(.*?)</p>',
        "extraction_rules": [
            {"target_kind": "excerpt", "pattern": '<p class="abstract">(.*?)</p>',
             "capture_group": 1, "max_matches": 1},
            {"target_kind": "image", "pattern": '<img[^>]*\\ssrc="([^"]+)"',
             "capture_group": 1, "max_matches": 2},
            {"target_kind": "heading", "pattern": "<h1>(.*?)</h1>",
             "capture_group": 1, "max_matches": 1},
        ],
    },
    {
        "name": "ya",
        "topic_tags": ["history", "exploration", "slavery", "ww1-era", "ww2-era"],
        "per_page": None,
        "result_page_limit": 1,
        "query_url_template": "file:ya/results/{QUERY}.html",
        "link_pattern": '<td class="doc"><a href="([^"]+)"',
        "citation_pattern": '<div class="cite">(.*?)</div>',
        "extraction_rules": [
            {"target_kind": "excerpt", "pattern": "<blockquote>(.*?)</blockquote>",
             "capture_group": 1, "max_matches": 1},
            {"target_kind": "image", "pattern": "<img[^>]*\\ssrc='([^']+)'",
             "capture_group": 1},
            {"target_kind": "full_text", "pattern": '<div class="body">(.*?)</div>',
             "capture_group": 1, "max_matches": 1},
        ],
    },
    {
        "name": "ae",
        "topic_tags": ["history", "exploration", "slavery", "ancient"],
        "per_page": 10,
        "result_page_limit": 3,
        "query_url_template": "file:ae/q/{QUERY}/{PAGE}.html",
        "link_pattern": 'data-href="([^"]+)"',
        "citation_pattern": "<cite>(.*?)</cite>",
        "extraction_rules": [
            {"target_kind": "excerpt", "pattern": '<div class="summary">(.*?)</div>',
             "capture_group": 1, "max_matches": 1},
            {"target_kind": "image",
             "pattern": '<figure><img alt="[^"]*" src="([^"]+)"',
             "capture_group": 1},
        ],
    },
    {
        "name": "jcb",
        "topic_tags": ["history", "exploration", "slavery", "ww1-era", "ww2-era"],
        "per_page": 25,
        "result_page_limit": 4,
        "query_url_template": "file:jcb/search/{QUERY}/results-{PAGE}.html",
        "link_pattern": "<h3 class=\"title\"><a href='([^']+)'",
        "citation_pattern": '<span class="citation">(.*?)</span>',
        "extraction_rules": [
            {"target_kind": "excerpt", "pattern": '<p class="lede">(.*?)</p>',
             "capture_group": 1, "max_matches": 1},
            {"target_kind": "image", "pattern": '<img[^>]*\\ssrc="([^"]+)"',
             "capture_group": 1},
            {"target_kind": "heading", "pattern": '<h2 class="doc">(.*?)</h2>',
             "capture_group": 1, "max_matches": 1},
        ],
    },
]


def html_escape(text):
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def sentence(rng, phrase, subjects, with_keywords):
    words = [rng.choice(FILLER) for _ in range(rng.randint(3, 7))]
    subject = rng.choice(subjects)
    verb = rng.choice(VERBS)
    if with_keywords:
        return (f"This {words[0]} {verb} {phrase} and the {subject}, with "
                f"notes on {' '.join(words[1:])}.")
    return f"A {words[0]} {verb} the {subject} among {' '.join(words[1:])}."


class Doc:
    def __init__(self, rng, db, query, index):
        slug, _, stem, phrase = QUERIES[query]
        subjects = SUBJECTS[query]
        self.db = db
        self.stem = stem.replace("_", "-")
        self.file = f"{self.stem}-{index:02d}.html"
        self.title = f"{rng.choice(subjects).title()}: {phrase} {rng.choice(FILLER)} {index}"
        self.excerpt = sentence(rng, phrase, subjects, True)
        self.paragraphs = [sentence(rng, phrase, subjects, rng.random() < 0.5)
                           for _ in range(rng.randint(2, 5))]
        author = rng.choice(AUTHORS)
        year = rng.randint(1790, 1995)
        self.citation = (f"{author}, &ldquo;{html_escape(self.title)}&rdquo;. "
                         f"{html_escape(rng.choice(PUBLISHERS))}, {year}.")
        self.image = f"../img/{self.stem}-{index:02d}.jpg" if rng.random() < 0.6 else None


def doc_html(db, doc, related):
    name = db["name"]
    parts = ["<!DOCTYPE html>", "<html>", "<head>",
             f"<meta charset=\"utf-8\"><title>{html_escape(doc.title)}</title>",
             "<style>body { font-family: serif; }</style>", "</head>", "<body>"]
    body = "\n".join(f"<p>{html_escape(p)}</p>" for p in doc.paragraphs)
    if name == "ew":
        parts += [f"<h1>{html_escape(doc.title)}</h1>",
                  f"<p class=\"abstract\">{html_escape(doc.excerpt)}</p>"]
        if doc.image:
            parts.append(f"<img width=\"240\" src=\"{doc.image}\" alt=\"plate\">")
        parts += [body, f"<p class=\"source\">{doc.citation}</p>",
                  "<h4>Related</h4>", "<ul>"]
        parts += [f"<li><a class=\"hit\" href=\"{r.file}\">{html_escape(r.title)}</a></li>"
                  for r in related]
        parts.append("</ul>")
    elif name == "ya":
        parts += [f"<h2>{html_escape(doc.title)}</h2>",
                  f"<blockquote>{html_escape(doc.excerpt)}</blockquote>"]
        if doc.image:
            parts.append(f"<img class='scan' src='{doc.image}'>")
        parts += [f"<div class=\"body\">{body}</div>",
                  f"<div class=\"cite\">{doc.citation}</div>",
                  "<table class=\"see-also\">"]
        parts += [f"<tr><td class=\"doc\"><a href=\"{r.file}\">{html_escape(r.title)}</a></td></tr>"
                  for r in related]
        parts.append("</table>")
    elif name == "ae":
        parts += [f"<header>{html_escape(doc.title)}</header>",
                  f"<div class=\"summary\">{html_escape(doc.excerpt)}</div>"]
        if doc.image:
            parts.append(f"<figure><img alt=\"artifact\" src=\"{doc.image}\"></figure>")
        parts += [body, f"<footer><cite>{doc.citation}</cite></footer>", "<nav>"]
        parts += [f"<span class=\"link\" data-href=\"{r.file}\">{html_escape(r.title)}</span>"
                  for r in related]
        parts.append("</nav>")
    else:
        parts += [f"<h2 class=\"doc\">{html_escape(doc.title)}</h2>",
                  f"<p class=\"lede\">{html_escape(doc.excerpt)}</p>"]
        if doc.image:
            parts.append(f"<div class=\"plate\"><img src=\"{doc.image}\"></div>")
        parts += [body, f"<span class=\"citation\">{doc.citation}</span>",
                  "<div class=\"more\">"]
        parts += [f"<h3 class=\"title\"><a href='{r.file}'>{html_escape(r.title)}</a></h3>"
                  for r in related]
        parts.append("</div>")
    parts += ["</body>", "</html>", ""]
    return "\n".join(parts)


def hit_html(db, doc, href):
    name = db["name"]
    title = html_escape(doc.title)
    if name == "ew":
        return (f"<div class=\"result\"><a class=\"hit\" href=\"{href}\">{title}</a>"
                f" <small><a class=\"hit\" href=\"{href}\">details</a></small></div>")
    if name == "ya":
        return f"<tr><td class=\"doc\"><a href=\"{href}\">{title}</a></td><td>record</td></tr>"
    if name == "ae":
        return f"<li class=\"item\" data-href=\"{href}\">{title}</li>"
    return f"<h3 class=\"title\"><a href='{href}'>{title}</a></h3>"


def search_page(db, query, hits, page, pages):
    lines = ["<!DOCTYPE html>", "<html>", "<head><meta charset=\"utf-8\">",
             f"<title>{db['name'].upper()} search: {html_escape(query)}</title></head>",
             "<body>", "<a href=\"/about.html\">About</a>",
             f"<p>Page {page} of {pages}</p>"]
    if db["name"] == "ya":
        lines.append("<table>")
    lines += hits
    if db["name"] == "ya":
        lines.append("</table>")
    if not hits:
        lines.append("<p class=\"empty\">No further results.</p>")
    lines += ["</body>", "</html>", ""]
    return "\n".join(lines)


def write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def generate(out):
    catalog = []
    for db in DATABASES:
        entry = {k: db[k] for k in ("name", "query_url_template", "link_pattern",
                                    "result_page_limit", "topic_tags",
                                    "extraction_rules", "citation_pattern")}
        entry["rate_limit_ms"] = 0
        catalog.append(entry)
        for q_index, (query, (slug, _, _, _)) in enumerate(QUERIES.items()):
            count = COUNTS[db["name"]][query]
            if count is None:
                continue
            rng = random.Random(f"{db['name']}/{query}")
            docs = [Doc(rng, db, query, i + 1) for i in range(count)]
            for i, doc in enumerate(docs):
                others = docs[:i] + docs[i + 1:]
                related = rng.sample(others, min(len(others), rng.randint(1, 4)))
                write(out / db["name"] / "docs" / doc.file, doc_html(db, doc, related))
            prefix = "../" if db["name"] == "ya" else "../../"
            hits = [hit_html(db, d, f"{prefix}docs/{d.file}") for d in docs]
            if db["per_page"] is None:
                write(out / "ya" / "results" / f"{slug}.html",
                      search_page(db, query, hits, 1, 1))
                continue
            per = db["per_page"]
            chunks = [hits[i:i + per] for i in range(0, len(hits), per)]
            if db["name"] == "jcb" and len(chunks) < db["result_page_limit"]:
                chunks.append([])  # explicit "no further results" page
            for page, chunk in enumerate(chunks, start=1):
                rel = db["query_url_template"][len("file:"):]
                rel = rel.replace("{QUERY}", slug).replace("{PAGE}", str(page))
                write(out / rel, search_page(db, query, chunk, page, len(chunks)))
    write(out / "catalog.json", json.dumps(catalog, indent=2) + "\n")

    for query, schedule in TIMINGS.items():
        stem = QUERIES[query][2]
        lines = [f"# completion offsets for \"{query}\" (seconds)"]
        lines += [f"{name} {seconds:.2f}" for name, seconds in schedule.items()]
        write(out / "timings" / f"{stem}.txt", "\n".join(lines) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve()
                                             .parent.parent / "fixtures"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    if out.exists():
        shutil.rmtree(out)
    generate(out)


if __name__ == "__main__":
    main()
