#!/usr/bin/env python3
# Copyright 2026 The prscrub Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates corpus200.jsonl and corpus200.expected.json.

Every PR is built to land in one known bucket, so the expected counters and
flags come from construction rather than from running the filters.
"""

import json
import pathlib
import random

SEED = 20260314
HERE = pathlib.Path(__file__).resolve().parent

VERBS = ["implement", "refactor", "improve", "handle", "support", "rework",
         "extend", "simplify", "document", "tune", "guard", "rename"]
NOUNS = ["parser", "cache", "timeout", "config", "loader", "widget", "render",
         "thread", "socket", "buffer", "index", "query", "schema", "token",
         "session", "logger", "metric", "retry", "client", "server", "module",
         "plugin", "layout", "vector", "stream", "encoder", "decoder", "queue"]
# Disjoint from the commit vocabulary; used to build irrelevant descriptions.
FOREIGN = ["banana", "orchestra", "lighthouse", "velvet", "glacier", "saffron",
           "tundra", "marble", "falcon", "harbor", "meadow", "cobalt", "ember",
           "quartz", "willow", "canyon"]
TRIVIAL_COMMITS = [
    "Merge branch 'master' into feature-{n}",
    "Merge branch 'develop' of https://example.com/fork.git",
    "Merge pull request #{n} from someone/topic",
    "Update README.md",
    "update changelog",
    "Add .gitignore",
    "Modify Makefile",
    "closes #{n}",
]
NON_ASCII = ["café", "naïve", "résumé", "über", "☃"]

rng = random.Random(SEED)
counter = [0]


def next_number():
    counter[0] += 1
    return counter[0]


def commit():
    words = [rng.choice(VERBS)] + rng.sample(NOUNS, rng.randint(3, 6))
    return " ".join(words)


def trivial_commit():
    return rng.choice(TRIVIAL_COMMITS).format(n=rng.randint(1, 999))


def words_of(messages):
    out = []
    for m in messages:
        out.extend(m.split())
    return out


def description_from(pool, length):
    # Never starts with a word that a trivial-description row keys on.
    words = [rng.choice(pool) for _ in range(length)]
    return "This change will " + " ".join(words) + "."


def pr(commits, body, bot=False, truncated=False):
    n = next_number()
    repo = rng.choice(["fixture/alpha", "fixture/beta", "fixture/gamma"])
    return {
        "repo": repo,
        "number": n,
        "title": "PR %d" % n,
        "body": body,
        "commits": commits,
        "author_is_bot": bot,
        "url": "https://example.com/%s/pull/%d" % (repo, n),
        "commits_truncated": truncated,
    }


def kept_commits(k):
    return [commit() for _ in range(k)]


def token_count(text):
    # The fixture only uses ASCII letters, digits, spaces, '#', '.', '/', '-',
    # '\'' and ':', so splitting on non-alphanumerics (keeping '#<digit>') is
    # enough to mirror the word rule for these strings.
    out, cur = [], ""
    for i, ch in enumerate(text.lower()):
        keep = ch.isalnum() or (ch == "#" and i + 1 < len(text)
                                and text[i + 1].isdigit())
        if keep and ch.isascii():
            cur += ch
        else:
            if cur:
                out.append(cur)
            cur = ""
    if cur:
        out.append(cur)
    return out


records = []
expected_flags = {}
drops = {"too_few_commits": 0, "too_many_commits": 0, "non_ascii": 0,
         "bot_written": 0, "empty_description": 0}


def flags(h1_removed=0, h1_emptied=False, h2=False, h3=False, h4=False):
    return {"h1_removed": h1_removed, "h1_emptied": h1_emptied, "h2": h2,
            "h3": h3, "h4": h4,
            "removed": h1_emptied or h2 or h3 or h4}


def add_kept(record, f):
    records.append(record)
    expected_flags["%s#%d" % (record["repo"], record["number"])] = f


# --- preprocessing drops -------------------------------------------------
for i in range(20):
    body = "Body %d " % i + (NON_ASCII[i % 5] if i % 4 == 0 else "text")
    records.append(pr(kept_commits(i % 2), body, bot=(i % 3 == 0)))
    drops["too_few_commits"] += 1
for i in range(15):
    truncated = i % 3 == 0
    k = 25 if truncated else rng.randint(21, 24)
    records.append(pr(kept_commits(k), "many commits " + str(i),
                      bot=(i % 2 == 0), truncated=truncated))
    drops["too_many_commits"] += 1
for i in range(12):
    commits = kept_commits(3)
    body = "plain body" if i % 3 else ""
    if i % 2 == 0 and body:
        body += " " + NON_ASCII[i % 5]
    else:
        commits[1] += " " + NON_ASCII[i % 5]
    records.append(pr(commits, body, bot=(i % 4 == 0)))
    drops["non_ascii"] += 1
for i in range(10):
    records.append(pr(kept_commits(3), "Bump dependency to v%d" % i, bot=True))
    drops["bot_written"] += 1
EMPTY_BODIES = ["", "   ", "\n\t\n", "- [x] done", "- [ ] docs\n* [X] tests",
                "  - [x] indented item\n"]
for i in range(18):
    records.append(pr(kept_commits(2 + i % 3), EMPTY_BODIES[i % len(EMPTY_BODIES)]))
    drops["empty_description"] += 1

# --- survivors, each built to trip a known set of heuristics ---------------
for i in range(50):  # clean
    commits = kept_commits(rng.randint(2, 6))
    pool = words_of(commits)
    n_input = len(token_count("\n".join(commits)))
    body = description_from(pool, rng.randint(1, max(1, n_input // 2 - 3)))
    if i % 5 == 0:
        body += "\n- [x] tests pass\n- [ ] docs"
    add_kept(pr(commits, body), flags())
for i in range(20):  # some trivial commits mixed in
    good = kept_commits(rng.randint(2, 5))
    bad = [trivial_commit() for _ in range(rng.randint(1, 3))]
    commits = good + bad
    rng.shuffle(commits)
    n_input = len(token_count("\n".join(good)))
    body = description_from(words_of(good), rng.randint(1, max(1, n_input // 2 - 3)))
    add_kept(pr(commits, body), flags(h1_removed=len(bad)))
for i in range(8):  # only trivial commits
    commits = [trivial_commit() for _ in range(rng.randint(2, 4))]
    body = description_from(NOUNS, 4)
    # An empty input has no words in common with the reference and is at most
    # half its length, so H3 and H4 fire as well.
    add_kept(pr(commits, body),
             flags(h1_removed=len(commits), h1_emptied=True, h3=True, h4=True))
for i in range(12):  # trivial description
    n = rng.randint(10, 9999)
    commits = kept_commits(2)
    commits[0] = "fix issue #%d in %s" % (n, rng.choice(NOUNS))
    body = "Fix issue #%d" % n
    add_kept(pr(commits, body), flags(h2=True))
for i in range(15):  # irrelevant description
    commits = kept_commits(rng.randint(3, 5))
    n_input = len(token_count("\n".join(commits)))
    words = rng.sample(FOREIGN, 6)
    body = "Mostly " + " ".join(words)
    assert len(token_count(body)) * 0.5 < n_input
    add_kept(pr(commits, body), flags(h3=True))
for i in range(12):  # inadequate input
    commits = kept_commits(2)
    n_input = len(token_count("\n".join(commits)))
    body = description_from(words_of(commits), 2 * n_input)
    add_kept(pr(commits, body), flags(h4=True))
for i in range(8):  # irrelevant and inadequate
    commits = ["%s %s" % (rng.choice(VERBS), rng.choice(NOUNS)) for _ in range(2)]
    body = "Mostly " + " ".join(rng.choice(FOREIGN) for _ in range(12))
    add_kept(pr(commits, body), flags(h3=True, h4=True))

rng.shuffle(records)
assert len(records) == 200

with open(HERE / "corpus200.jsonl", "w", encoding="utf-8", newline="\n") as f:
    for r in records:
        f.write(json.dumps(r, ensure_ascii=False, separators=(",", ":")) + "\n")

left = 200 - sum(drops.values())
expected = {
    "preprocess": dict(initial=200, **drops, left=left),
    "flags": {k: expected_flags[k] for k in sorted(expected_flags)},
}
with open(HERE / "corpus200.expected.json", "w", encoding="utf-8") as f:
    json.dump(expected, f, indent=2)
    f.write("\n")
