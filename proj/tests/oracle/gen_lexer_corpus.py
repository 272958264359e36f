#!/usr/bin/env python3
# Copyright 2026 The proofopt Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Freezes tests/data/lexer_corpus.jsonl.

Every entry pairs a Lean snippet with the value the reference tokenizer in
proof_length_ref.py assigns to it. Entries are the example listings under
tests/data/listings plus seeded mutations of them and synthetic snippets that
exercise each tokenizer quirk. Re-run after changing the mutation set:

    python3 tests/oracle/gen_lexer_corpus.py tests/data
"""

import json
import os
import random
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from proof_length_ref import proof_length  # noqa: E402

OPERATORS = [':=', '!=', '&&', '-.', '->', '<-', '..', '...', '::', ':>',
             '<;>', ';;', '==', '||', '=>', '<=', '>=', '⁻¹', '?_']
ODD_CHARS = ['\t', '\x0b', '\x0c', '\x1c', '\x85', ' ', ' ', '\r',
             '\r\n', '\xa0', '　', 'ℝ', '₀', '¹', '²', 'π', '∑', '⟨', '⟩',
             '←', '→', '↑', '∀', '∃', '≤', '≠', 'é', '𝔽', '٣', 'Ⅻ', '﻿']


def listing_entries(listing_dir):
    out = []
    for name in sorted(os.listdir(listing_dir)):
        with open(os.path.join(listing_dir, name), encoding='utf-8') as f:
            out.append((name[:-5], f.read()))
    return out


def mutate(rng, src):
    lines = src.split('\n')
    kind = rng.randrange(12)
    if kind == 0:  # trailing line comment
        i = rng.randrange(len(lines))
        lines[i] += rng.choice([' -- note', '-- x', '   --- done', '--'])
    elif kind == 1:  # blank lines
        for _ in range(rng.randint(1, 4)):
            lines.insert(rng.randrange(len(lines) + 1), rng.choice(['', '   ']))
    elif kind == 2:  # one block comment
        i = rng.randrange(len(lines))
        lines.insert(i, '  /- block\n  comment -/')
    elif kind == 3:  # two block comments: greedy deletion spans live code
        i = rng.randrange(len(lines))
        j = rng.randrange(i, len(lines))
        lines.insert(j, '  /- second -/')
        lines.insert(i, '  /- first -/')
    elif kind == 4:  # rename identifiers to longer ones
        return src.replace('h₀', 'hypothesis_zero').replace('h₁', 'hyp_one_long')
    elif kind == 5:  # spaced operators
        i = rng.randrange(len(lines))
        op = rng.choice(OPERATORS)
        lines[i] += ' ' + ' '.join(op) + ' ' + rng.choice(['x', 'y.z', '1'])
    elif kind == 6:  # odd unicode or control characters
        i = rng.randrange(len(lines))
        pos = rng.randrange(len(lines[i]) + 1)
        lines[i] = lines[i][:pos] + rng.choice(ODD_CHARS) + lines[i][pos:]
    elif kind == 7:  # CRLF line endings
        return '\r\n'.join(lines)
    elif kind == 8:  # trailing newlines
        return src + rng.choice(['\n', '\n\n', '\n\n\n', '  \n'])
    elif kind == 9:  # unterminated block comment
        i = rng.randrange(len(lines))
        lines[i] += ' /- never closed'
    elif kind == 10:  # drop the `by`
        return src.replace(':= by', ':=', 1)
    else:  # tabs for indentation
        return '\n'.join(l.replace('  ', '\t', 1) for l in lines)
    return '\n'.join(lines)


def synthetic(rng):
    atoms = ['x', 'h₁', 'Nat.succ', "a'", '_', '(', ')', '[', ']', ',', ':',
             '=', '<', '>', '-', '/', '.', ';', '!', '?', '&', '|', '*', '+',
             '^', '⁻', '¹', ' ', ' ', ' ', '\n', '--', '/-', '-/', '<;>',
             '..', '...', '·', '⟨', '⟩', '\t', '\r', ' ', '%', '$', '@']
    body = ''.join(rng.choice(atoms) for _ in range(rng.randint(0, 40)))
    head = rng.choice(['theorem t : True := by', 'lemma l (a : ℕ) : a = a :=',
                       'example := by', 'theorem nodelim : True'])
    return head + rng.choice([' ', '\n  ', '']) + body


def main(data_dir):
    rng = random.Random(20251015)
    listings = listing_entries(os.path.join(data_dir, 'listings'))
    entries = [(name, src) for name, src in listings]
    fixed = [
        ('strip_by', 'theorem t : 1 = 1 := by rfl'),
        ('strip_term', 'theorem t : a = a := rfl'),
        ('no_delimiter', 'theorem t : True'),
        ('line_comment', 'theorem t := by rfl -- done'),
        ('greedy_blocks', 'theorem t := by /- a -/ rfl /- b -/'),
        ('empty_body', 'theorem t := by'),
        ('empty_body_newline', 'theorem t := by\n'),
        ('interior_blank', 'theorem t := by\n  a\n\n  b'),
        ('trailing_blank_lines', 'theorem t := by\n  a\n\n\n'),
        ('spaced_ellipsis', 'theorem t := by\n  a. . .b'),
        ('inverse', 'theorem t := by\n  simp [x⁻¹]'),
        ('combinator', 'theorem t := by norm_num <;> rfl'),
        ('assign', 'theorem t := by x := 1'),
        ('only_spaces_line', 'theorem t := by\n  a\n     \n  b'),
        ('crlf', 'theorem t := by\r\n  a\r\n  b\r\n'),
    ]
    entries += fixed
    for name, src in listings:
        for m in range(6):
            mutated = src
            for _ in range(rng.randint(1, 3)):
                mutated = mutate(rng, mutated)
            entries.append((f'{name}~mut{m}', mutated))
    for i in range(250):
        entries.append((f'synthetic{i}', synthetic(rng)))

    path = os.path.join(data_dir, 'lexer_corpus.jsonl')
    with open(path, 'w', encoding='utf-8') as f:
        for name, src in entries:
            f.write(json.dumps({'name': name, 'source': src,
                                'expected': proof_length(src)},
                               ensure_ascii=False) + '\n')
    print(f'wrote {len(entries)} entries to {path}')


if __name__ == '__main__':
    main(sys.argv[1] if len(sys.argv) > 1 else 'tests/data')
