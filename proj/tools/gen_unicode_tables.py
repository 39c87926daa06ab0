#!/usr/bin/env python3
"""Regenerates the embedded Unicode tables under src/generated/.

Run from the repository root:  python3 tools/gen_unicode_tables.py
"""
import sys
import unicodedata

OUT = "src/generated"

EMOJI_BLOCKS = [
    (0x1F000, 0x1F02F),  # mahjong tiles
    (0x1F0A0, 0x1F0FF),  # playing cards
    (0x1F1E6, 0x1F1FF),  # regional indicators
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F900, 0x1F9FF),
    (0x1FA70, 0x1FAFF),
    (0x2600, 0x26FF),
    (0x2700, 0x27BF),
    (0x2B00, 0x2BFF),    # misc symbols and arrows (hearts, stars)
    (0xFE0F, 0xFE0F),    # variation selector-16
    (0x200D, 0x200D),    # zero width joiner
    (0x20E3, 0x20E3),    # combining enclosing keycap
]
EMOJI_EXTRA = [0x203C, 0x2049, 0x2122, 0x2139, 0x3030, 0x303D, 0x3297, 0x3299,
               0x00A9, 0x00AE, 0x2328, 0x23CF] + list(range(0x2300, 0x23FF + 1))


def is_emoji(cp):
    if cp in EMOJI_EXTRA:
        return True
    return any(lo <= cp <= hi for lo, hi in EMOJI_BLOCKS)


def ranges(pred, limit=0x110000):
    out = []
    start = None
    for cp in range(limit):
        if pred(cp):
            if start is None:
                start = cp
        elif start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, limit - 1))
    return out


def emit_ranges(f, name, rs):
    f.write(f"static constexpr CodepointRange {name}[] = {{\n")
    for lo, hi in rs:
        f.write(f"    {{0x{lo:X}, 0x{hi:X}}},\n")
    f.write("};\n")


def main():
    def punct_or_symbol(cp):
        if is_emoji(cp):
            return False
        ch = chr(cp)
        return unicodedata.category(ch)[0] in ("P", "S")

    with open(f"{OUT}/punct_symbol_ranges.inc", "w") as f:
        f.write("// Generated by tools/gen_unicode_tables.py. Do not edit.\n")
        f.write("// Unicode general categories P* and S*, emoji excluded.\n")
        emit_ranges(f, "kPunctSymbolRanges", ranges(punct_or_symbol))

    with open(f"{OUT}/emoji_ranges.inc", "w") as f:
        f.write("// Generated by tools/gen_unicode_tables.py. Do not edit.\n")
        emit_ranges(f, "kEmojiRanges",
                    ranges(lambda cp: is_emoji(cp) and
                           (unicodedata.category(chr(cp)) != "Cn" or cp in (0xFE0F, 0x200D))))

    # Simple 1:1 lowercase mapping (multi-codepoint expansions skipped).
    pairs = []
    for cp in range(0x110000):
        ch = chr(cp)
        lo = ch.lower()
        if len(lo) == 1 and lo != ch:
            pairs.append((cp, ord(lo)))
    with open(f"{OUT}/lowercase_map.inc", "w") as f:
        f.write("// Generated by tools/gen_unicode_tables.py. Do not edit.\n")
        f.write("static constexpr CodepointPair kLowercaseMap[] = {\n")
        for a, b in pairs:
            f.write(f"    {{0x{a:X}, 0x{b:X}}},\n")
        f.write("};\n")

    # Emoji description table from Unicode character names, lowercase,
    # hyphens and colons replaced by spaces, restricted to ASCII letters
    # and spaces.  ZWJ and VS-16 map to empty (dropped when describing).
    entries = []
    for cp in range(0x110000):
        if not is_emoji(cp) or cp in (0xFE0F, 0x200D):
            continue
        try:
            name = unicodedata.name(chr(cp))
        except ValueError:
            continue
        desc = name.lower().replace("-", " ").replace(":", " ").replace(",", " ")
        desc = "".join(c for c in desc if c.isalpha() or c == " ")
        desc = " ".join(desc.split())
        if desc:
            entries.append((cp, desc))
    with open(f"{OUT}/emoji_names.inc", "w") as f:
        f.write("// Generated by tools/gen_unicode_tables.py. Do not edit.\n")
        f.write("static constexpr EmojiName kEmojiNames[] = {\n")
        for cp, desc in entries:
            f.write(f'    {{0x{cp:X}, "{desc}"}},\n')
        f.write("};\n")
    print(f"wrote tables ({len(pairs)} lowercase pairs, {len(entries)} emoji names)",
          file=sys.stderr)


if __name__ == "__main__":
    main()
