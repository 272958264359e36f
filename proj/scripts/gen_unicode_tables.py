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

"""Emits core/src/unicode_tables.inc from this interpreter's str predicates.

The token-length metric is defined in terms of Python's str.isalnum,
str.isspace and str.splitlines, so the C++ tables are derived from them
directly rather than from a separate Unicode database.
"""

import sys
import unicodedata


def ranges(pred):
    out, start = [], None
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            ok = False
        else:
            ok = pred(chr(cp))
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, 0x10FFFF))
    return out


def emit(name, rs, f):
    f.write(f"inline constexpr CodepointRange {name}[] = {{\n")
    for lo, hi in rs:
        f.write(f"    {{0x{lo:04X}, 0x{hi:04X}}},\n")
    f.write("};\n\n")


def main(path):
    line_breaks = sorted({ord(c) for c in map(chr, range(0x110000))
                          if not (0xD800 <= ord(c) <= 0xDFFF)
                          and len(("a" + c + "b").splitlines()) == 2})
    with open(path, "w", encoding="utf-8") as f:
        f.write("// Generated by scripts/gen_unicode_tables.py from Python "
                f"{sys.version.split()[0]} (Unicode {unicodedata.unidata_version}).\n")
        f.write("// Do not edit.\n\n")
        emit("kAlnumRanges", ranges(str.isalnum), f)
        emit("kSpaceRanges", ranges(str.isspace), f)
        f.write("inline constexpr char32_t kLineBreaks[] = {")
        f.write(", ".join(f"0x{c:04X}" for c in line_breaks))
        f.write("};\n")


if __name__ == "__main__":
    main(sys.argv[1])
