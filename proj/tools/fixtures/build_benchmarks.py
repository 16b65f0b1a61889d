#!/usr/bin/env python3
# Copyright 2026 The taxo-expand Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the stand-in benchmark fixtures under data/benchmarks/ from WordNet 3.0.

The five benchmark directories mirror the published dataset statistics
(concept count, raw edge count, depth) but are carved out of the WordNet 3.0
noun hierarchy, so they can be redistributed with the repository. Real
benchmark files can be dropped in with `taxo ingest` instead.

Usage: build_benchmarks.py /path/to/wordnet-3.0/data.noun OUT_DIR
"""

import collections
import json
import os
import sys


def load_nouns(path):
    synsets = {}
    with open(path, encoding="latin-1") as f:
        for line in f:
            if line.startswith("  "):
                continue
            head, _, gloss = line.partition(" | ")
            fields = head.split()
            offset = fields[0]
            word_count = int(fields[3], 16)
            words = [fields[4 + 2 * i] for i in range(word_count)]
            i = 4 + 2 * word_count
            pointer_count = int(fields[i])
            i += 1
            hypernyms, hyponyms = [], []
            for _ in range(pointer_count):
                symbol, target, pos, _ = fields[i:i + 4]
                i += 4
                if pos != "n":
                    continue
                if symbol in ("@", "@i"):
                    hypernyms.append(target)
                elif symbol in ("~", "~i"):
                    hyponyms.append(target)
            synsets[offset] = {
                "words": words,
                "definition": clean_gloss(gloss),
                "hypernyms": hypernyms,
                "hyponyms": hyponyms,
            }
    return synsets


def clean_gloss(gloss):
    gloss = gloss.strip()
    cut = gloss.find('; "')
    if cut >= 0:
        gloss = gloss[:cut]
    if gloss.startswith('"'):
        gloss = ""
    return gloss.strip().rstrip(";").strip()


def lemma_to_term(lemma):
    for marker in ("(a)", "(p)", "(ip)"):
        if lemma.endswith(marker):
            lemma = lemma[: -len(marker)]
    return lemma.replace("_", " ")


def pick_term(synset, used):
    for lemma in synset["words"]:
        term = lemma_to_term(lemma)
        if term not in used:
            return term
    base = lemma_to_term(synset["words"][0])
    n = 2
    while f"{base} ({n})" in used:
        n += 1
    return f"{base} ({n})"


def carve(synsets, root, max_depth, target_size=None):
    """BFS over hyponyms; returns ordered nodes, tree parent and depth maps."""
    depth = {root: 1}
    parent = {root: None}
    order = [root]
    queue = collections.deque([root])
    while queue:
        node = queue.popleft()
        if depth[node] >= max_depth:
            continue
        for child in synsets[node]["hyponyms"]:
            if child not in depth:
                depth[child] = depth[node] + 1
                parent[child] = node
                order.append(child)
                queue.append(child)
    if target_size is not None and len(order) > target_size:
        deepest = max(order, key=lambda n: (depth[n], -order.index(n)))
        keep = set()
        walk = deepest
        while walk is not None:
            keep.add(walk)
            walk = parent[walk]
        drop = len(order) - target_size
        removed = set()
        for node in reversed(order):
            if drop == 0:
                break
            if node in keep:
                continue
            removed.add(node)
            drop -= 1
        order = [n for n in order if n not in removed]
    members = set(order)
    parent = {n: parent[n] for n in order}
    depth = {n: depth[n] for n in order}
    assert all(parent[n] is None or parent[n] in members for n in order)
    return order, parent, depth


def write_pairs(synsets, root, max_depth, concepts, edges, out_dir):
    order, parent, depth = carve(synsets, root, max_depth, concepts)
    assert len(order) == concepts, (root, len(order))
    members = set(order)
    used = set()
    term = {}
    for node in order:
        term[node] = pick_term(synsets[node], used)
        used.add(term[node])
    tree_edges = [(node, parent[node]) for node in order if parent[node] is not None]
    extra = []
    # Secondary hypernyms inside the carved set first, then transitive
    # (grandparent) links, which are still valid is-a relations.
    for node in order:
        for hyper in synsets[node]["hypernyms"]:
            if hyper in members and hyper != parent[node]:
                extra.append((node, hyper))
    for node in order:
        p = parent[node]
        if p is not None and parent[p] is not None:
            extra.append((node, parent[p]))
    needed = edges - len(tree_edges)
    assert 0 <= needed <= len(extra), (root, needed, len(extra))
    all_edges = tree_edges + extra[:needed]
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "pairs.tsv"), "w", encoding="utf-8", newline="\n") as f:
        for child, par in all_edges:
            f.write(f"{term[child]}\t{term[par]}\n")
    with open(os.path.join(out_dir, "definitions.tsv"), "w", encoding="utf-8", newline="\n") as f:
        for node in order:
            f.write(f"{term[node]}\t{synsets[node]['definition']}\n")
    return {"concepts": len(order), "edges": len(all_edges), "depth": max(depth.values())}


def canonical_records(synsets, root, max_depth, max_size):
    order, parent, _ = carve(synsets, root, max_depth, max_size)
    used_terms = collections.Counter()
    ids = {}
    records = []
    for node in order:
        t = lemma_to_term(synsets[node]["words"][0])
        used_terms[t] += 1
        ids[node] = t if used_terms[t] == 1 else f"{t}#{used_terms[t]}"
        records.append({
            "id": ids[node],
            "term": t,
            "definition": synsets[node]["definition"],
            "parent": ids[parent[node]] if parent[node] is not None else None,
        })
    return records


def write_jsonl(records, path):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False, separators=(",", ":")) + "\n")


# The insanity sub-taxonomy behind the golden prompt fixtures, including its
# held-out query (Alzheimer's disease). Record order fixes the child-list order.
INSANITY = [
    ("insanity", "relatively permanent disorder of the mind", None),
    ("irrationality", "the state of being irrational; lacking powers of understanding", "insanity"),
    ("dementia", "mental deterioration of organic or functional origin", "insanity"),
    ("craziness", "informal terms for insanity", "insanity"),
    ("derangement", "a state of mental disturbance and disorientation", "insanity"),
    ("lunacy", "obsolete terms for legal insanity", "insanity"),
    ("presenile dementia", "dementia with onset before the age of 65", "dementia"),
    ("alcoholic dementia", "dementia observed during the last stages of severe chronic alcoholism; "
     "involves loss of memory for recent events although long term memory is intact", "dementia"),
    ("senile dementia", "dementia of the aged; results from degeneration of the brain in the absence "
     "of cerebrovascular disease", "dementia"),
    ("Alzheimer's disease", "a progressive form of presenile dementia that is similar to senile dementia "
     "except that it usually starts in the 40s or 50s; first symptoms are impaired memory which is "
     "followed by impaired thought and speech and finally complete helplessness", "presenile dementia"),
    ("Pick's disease", "a progressive form of presenile dementia found most often in middle-aged and "
     "elderly women and characterized by degeneration of the frontal and temporal lobes with loss of "
     "intellectual ability and transitory aphasia", "presenile dementia"),
]

# Sub-taxonomy roots (WordNet 3.0 noun offsets) and their depth caps.
WORDNET_ROOTS = [
    ("07929519", 4),  # coffee
    ("04490091", 4),  # truck
    ("02959942", 4),  # railway car
    ("07644382", 4),  # bird (food)
    ("07775375", 4),  # fish (food)
    ("13498404", 5),  # infection (process)
    ("04199027", 4),  # shoe
]
GRAPHINE_ROOTS = [
    ("05327767", 6),  # gland
    ("14174549", 6),  # infection (state)
    ("05289297", 6),  # muscle
    ("05269901", 6),  # bone
    ("05237755", 6),  # body covering
]


def main():
    if len(sys.argv) != 3:
        print(__doc__)
        return 1
    synsets = load_nouns(sys.argv[1])
    out = sys.argv[2]

    summary = {}
    summary["semeval-sci"] = write_pairs(synsets, "05999797", 8, 429, 451, os.path.join(out, "semeval-sci"))
    summary["semeval-env"] = write_pairs(synsets, "13518963", 6, 261, 261, os.path.join(out, "semeval-env"))
    summary["semeval-food"] = write_pairs(synsets, "00021265", 8, 1486, 1576, os.path.join(out, "semeval-food"))

    wn_dir = os.path.join(out, "wordnet")
    os.makedirs(wn_dir, exist_ok=True)
    write_jsonl([{"id": t, "term": t, "definition": d, "parent": p} for t, d, p in INSANITY],
                os.path.join(wn_dir, "00-insanity.jsonl"))
    sizes = [len(INSANITY)]
    for i, (root, depth) in enumerate(WORDNET_ROOTS, start=1):
        records = canonical_records(synsets, root, depth, 30)
        name = records[0]["term"].replace(" ", "-").lower()
        write_jsonl(records, os.path.join(wn_dir, f"{i:02d}-{name}.jsonl"))
        sizes.append(len(records))
    summary["wordnet"] = {"taxonomies": len(sizes), "mean_concepts": sum(sizes) / len(sizes)}

    g_dir = os.path.join(out, "graphine")
    os.makedirs(g_dir, exist_ok=True)
    sizes = []
    for i, (root, depth) in enumerate(GRAPHINE_ROOTS):
        records = canonical_records(synsets, root, depth, 50)
        name = records[0]["term"].replace(" ", "-").lower()
        write_jsonl(records, os.path.join(g_dir, f"{i:02d}-{name}.jsonl"))
        sizes.append(len(records))
    summary["graphine"] = {"taxonomies": len(sizes), "mean_concepts": sum(sizes) / len(sizes)}
    print(json.dumps(summary, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
