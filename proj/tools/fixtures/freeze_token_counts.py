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
"""Freezes reference cl100k_base token counts for the tokenizer tests.

Requires `tiktoken` plus a local cl100k_base.tiktoken (for example from the
tiktoken-offline package). Output: tests/fixtures/token_counts.json
"""

import glob
import json
import sys

import tiktoken
from tiktoken.load import load_tiktoken_bpe

PATTERN = r"""'(?i:[sdmt]|ll|ve|re)|[^\r\n\p{L}\p{N}]?+\p{L}++|\p{N}{1,3}+| ?[^\s\p{L}\p{N}]++[\r\n]*+|\s++$|\s*[\r\n]|\s+(?!\S)|\s"""

CASES = [
    "",
    "a",
    "hello world",
    "Hello, World!",
    "  leading and trailing  ",
    "line one\nline two\n\n\nline three\n",
    "tabs\tand\r\nwindows\r\nnewlines",
    "I'm here, you're there, they'll go, we've been, it's done, she'd say",
    "IT'S LOUD'LL'VE",
    "numbers 1 12 123 1234 12345 3.14159 2024-10-15",
    "Alzheimer's_disease.add_parent(presenile_dementia)",
    "x = Entity(name='x', description='', parent=None, child=[])",
    "child=['irrationality', 'dementia', 'craziness']",
    "emoji-free but punctuation heavy: ;;; ... --- !!! ??? (((",
    "trailing spaces   ",
    "   \n   \n",
    "café naïve résumé über Straße",
    "curly ’quotes’ and “double” — dashes – ok",
    "non-breaking space and ½ half",
    "Добро пожаловать",
    "supercalifragilisticexpialidocious antidisestablishmentarianism",
    "    def add_parent(self, parent: 'Entity'):\n        self.parent = parent.name",
]


def main():
    path = sys.argv[1] if len(sys.argv) > 1 else None
    if path is None:
        import tiktoken_ext
        path = glob.glob(tiktoken_ext.__path__[0] + "/data/cl100k_base.tiktoken")[0]
    enc = tiktoken.Encoding("cl100k_ref", pat_str=PATTERN,
                            mergeable_ranks=load_tiktoken_bpe(path), special_tokens={})
    cases = list(CASES)
    for golden in sorted(glob.glob("tests/fixtures/golden/*.txt")):
        cases.append(open(golden, encoding="utf-8").read())
    for defs in ("data/benchmarks/semeval-sci/definitions.tsv",):
        with open(defs, encoding="utf-8") as f:
            cases.extend(line.rstrip("\n") for _, line in zip(range(40), f))
    out = [{"text": c, "tokens": len(enc.encode_ordinary(c))} for c in cases]
    with open("tests/fixtures/token_counts.json", "w", encoding="utf-8") as f:
        json.dump(out, f, ensure_ascii=False, indent=1)
        f.write("\n")
    print(f"wrote {len(out)} cases")


if __name__ == "__main__":
    main()
