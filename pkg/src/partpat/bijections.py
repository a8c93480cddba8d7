"""Invertible maps between pattern-avoiding classes.

Every bijection here works on explicit small structures and re-checks
the structural facts its correctness argument relies on; a violated
invariant raises immediately (naming the failed step) instead of being
silently patched.  Pattern families are produced by symbolic builders,
never typed by hand.

Contents:

* chunk machinery and the block-size-preserving map between avoiders of
  1^k 2 1^(m-k) and of 1^m 2;
* the row-recursive bijection between fillings avoiding the two-row
  patterns with column words 2^p 1 2^q and 2^(p+q) 1, preserving row
  sums and the falling property;
* landscape words, cluster shuffles, and the level-by-level hybrid
  chains for the families 1 2^(p+1) {1,3} 2^q {3,1} 2^r and the
  1-2-4 / 1-3-4 families;
* tail maps for 123-avoiding suffixes of 1123-avoiders;
* the pseudoswap, the key-row raising step on mixed-canonical matrices,
  and the resulting bijection between 12112- and 12212-avoiders.
"""

from .containment import (avoids, contains, contains_124_at_level,
                          contains_134_at_level, contains_at_level)
from .fillings import Filling, Matrix01, Shape, filling_contains, matrix_of
from .seqcore import assert_partition, remove_first_block, reverse_complement, \
    validate_partition

__all__ = [
    "ones_pattern",
    "sigma_plus",
    "sigma_minus",
    "pattern_pair_124",
    "spq_word",
    "chunk_decompose",
    "chunk_compose",
    "chunk_bijection",
    "chunk_bijection_inverse",
    "fall_bijection",
    "fall_bijection_inverse",
    "fall_bijection_sparse",
    "landscape",
    "landscape_split",
    "is_landscape_word",
    "compatible_words",
    "l_compatible",
    "h_compatible",
    "shuffle",
    "hybrid_chain_sigma",
    "hybrid_chain_sigma_inverse",
    "hybrid_chain_124",
    "hybrid_chain_124_inverse",
    "tail_decompose",
    "tail_compose",
    "is_123_avoiding",
    "tail_rank",
    "tail_f1",
    "tail_f2",
    "tail_step_inverse",
    "pseudoswap",
    "pseudoswap_inverse",
    "is_kpq_matrix",
    "key_row_raise",
    "key_row_lower",
    "bijection_12112_12212",
    "bijection_12112_12212_inverse",
    "spq1_patterns",
    "spq1_partition_map",
    "spq2_patterns",
    "spq2_partition_map",
]


class BijectionInvariantError(RuntimeError):
    """An internal structural fact failed; the construction is unsound
    for this input (or the input violated an unchecked precondition)."""


# ---------------------------------------------------------------------------
# pattern builders


def ones_pattern(k, m):
    """The binary pattern 1^k 2 1^(m-k); k = m gives 1^m 2."""
    if not (1 <= k <= m):
        raise ValueError("need 1 <= k <= m")
    return (1,) * k + (2,) + (1,) * (m - k)


def sigma_plus(p, q, r):
    """1 2^(p+1) 1 2^q 3 2^r."""
    return (1,) + (2,) * (p + 1) + (1,) + (2,) * q + (3,) + (2,) * r


def sigma_minus(p, q, r):
    """1 2^(p+1) 3 2^q 1 2^r."""
    return (1,) + (2,) * (p + 1) + (3,) + (2,) * q + (1,) + (2,) * r


def spq_word(p, q):
    """Column word 2^p 1 2^q of the two-row filling patterns."""
    return (2,) * p + (1,) + (2,) * q


#: the four level-chain families, keyed by the shape of the source suffix
HYBRID_124_KINDS = ("2-41", "2-14", "3-14", "3-41")


def pattern_pair_124(kind, p, q):
    """Source and target patterns of the four suffix families.

    kind "2-41": 123 2^p 41 2^q  ->  123 2^p 4 2^q 1   (p, q >= 1)
    kind "2-14": 123 2^p 14 2^q  ->  123 1 2^p 4 2^q   (p, q >= 1)
    kind "3-14": 12 3^(p+1) 1 3^q 4  ->  12 3^(p+1) 14 3^q  (p >= 0, q >= 1)
    kind "3-41": 12 3^(p+1) 41 3^q  ->  1234 3^p 1 3^q     (p >= 0, q >= 1)
    """
    if kind == "2-41":
        if p < 1 or q < 1:
            raise ValueError("kind 2-41 needs p, q >= 1")
        src = (1, 2, 3) + (2,) * p + (4, 1) + (2,) * q
        tgt = (1, 2, 3) + (2,) * p + (4,) + (2,) * q + (1,)
    elif kind == "2-14":
        if p < 1 or q < 1:
            raise ValueError("kind 2-14 needs p, q >= 1")
        src = (1, 2, 3) + (2,) * p + (1, 4) + (2,) * q
        tgt = (1, 2, 3, 1) + (2,) * p + (4,) + (2,) * q
    elif kind == "3-14":
        if p < 0 or q < 1:
            raise ValueError("kind 3-14 needs p >= 0, q >= 1")
        src = (1, 2) + (3,) * (p + 1) + (1,) + (3,) * q + (4,)
        tgt = (1, 2) + (3,) * (p + 1) + (1, 4) + (3,) * q
    elif kind == "3-41":
        if p < 0 or q < 1:
            raise ValueError("kind 3-41 needs p >= 0, q >= 1")
        src = (1, 2) + (3,) * (p + 1) + (4, 1) + (3,) * q
        tgt = (1, 2, 3, 4) + (3,) * p + (1,) + (3,) * q
    else:
        raise ValueError("unknown kind %r" % (kind,))
    return src, tgt


# ---------------------------------------------------------------------------
# chunks and the 1^k 2 1^(m-k) bijection


def chunk_decompose(p):
    """Split p = 1 P_1 1 P_2 ... 1 P_t at its ones.

    Returns (chunks, core) where the chunks are the maximal 1-free runs
    after each 1 (possibly empty) and core is p with its first block
    removed and the rest shifted down.
    """
    assert_partition(p)
    if not p:
        return [], ()
    chunks = []
    cur = None
    for s in p:
        if s == 1:
            cur = []
            chunks.append(cur)
        else:
            cur.append(s)
    return [tuple(c) for c in chunks], remove_first_block(p)


def chunk_compose(chunks):
    """Rebuild 1 P_1 1 P_2 ... from chunk contents (symbols >= 2)."""
    out = []
    for ch in chunks:
        out.append(1)
        out.extend(ch)
    return tuple(out)


def _chunk_map(p, k, m, inverse):
    if not p or max(p) == 1:
        return tuple(p)
    chunks, core = chunk_decompose(p)
    t = len(chunks)
    mapped_core = _chunk_map(core, k, m, inverse)
    shifted = tuple(x + 1 for x in mapped_core)

    if not inverse:
        pieces = []
        idx = 0
        for ch in chunks:
            pieces.append(shifted[idx:idx + len(ch)])
            idx += len(ch)
        if t < m:
            return chunk_compose(pieces)
        for i in range(k, t - m + k + 1):
            if pieces[i - 1]:
                raise BijectionInvariantError(
                    "chunk %d should be empty for a 1^%d 2 1^%d avoider"
                    % (i, k, m - k))
        new_pieces = pieces[:k - 1] + pieces[t - m + k:] + [()] * (t - m + 1)
        return chunk_compose(new_pieces)

    # inverse: p plays the image avoiding 1^m 2; restore chunk lengths
    if t < m:
        lengths = [len(ch) for ch in chunks]
    else:
        for i in range(m, t + 1):
            if chunks[i - 1]:
                raise BijectionInvariantError(
                    "chunk %d should be empty for a 1^%d 2 avoider" % (i, m))
        lengths = ([len(ch) for ch in chunks[:k - 1]]
                   + [0] * (t - m + 1)
                   + [len(ch) for ch in chunks[k - 1:m - 1]])
    pieces = []
    idx = 0
    for length in lengths:
        pieces.append(shifted[idx:idx + length])
        idx += length
    return chunk_compose(pieces)


def chunk_bijection(p, k, m):
    """Map an avoider of 1^k 2 1^(m-k) to an avoider of 1^m 2.

    Recursion over the number of blocks; preserves the number of blocks
    and the multiset of block sizes.
    """
    if not avoids(p, ones_pattern(k, m)):
        raise ValueError("input contains the source pattern")
    out = _chunk_map(tuple(p), k, m, inverse=False)
    if not avoids(out, ones_pattern(m, m)):
        raise BijectionInvariantError("image contains 1^m 2")
    return out


def chunk_bijection_inverse(p, k, m):
    if not avoids(p, ones_pattern(m, m)):
        raise ValueError("input contains the target pattern")
    out = _chunk_map(tuple(p), k, m, inverse=True)
    if not avoids(out, ones_pattern(k, m)):
        raise BijectionInvariantError("preimage contains the source pattern")
    return out


# ---------------------------------------------------------------------------
# the falling-filling bijection


def _fall_move(heights, rws, r, p, q, inverse):
    """Relocate the runs of height-r columns between consecutive top-row
    1-cells: the last q inter-cell runs move next to the p-th cell
    (forward), or back (inverse).  Raises when the run that should be
    empty is not, i.e. the input misses the avoidance precondition."""
    band = [j for j, h in enumerate(heights) if h == r]
    content = [rws[j] for j in band]
    tpos = [i for i, v in enumerate(content) if v == r]
    mcount = len(tpos)
    gaps = []
    prev = -1
    for tp in tpos:
        gaps.append(content[prev + 1:tp])
        prev = tp
    gaps.append(content[prev + 1:])

    newgaps = []
    if not inverse:
        for g in range(p, mcount - q + 1):
            if gaps[g]:
                raise ValueError(
                    "top-row gap %d not empty: filling contains the source"
                    " pattern" % g)
        for g in range(mcount + 1):
            if p <= g <= p + q - 1:
                newgaps.append(gaps[mcount - q + 1 + (g - p)])
            elif mcount - q + 1 <= g:
                newgaps.append([])
            else:
                newgaps.append(gaps[g])
    else:
        for g in range(p + q, mcount + 1):
            if gaps[g]:
                raise ValueError(
                    "top-row gap %d not empty: filling contains the target"
                    " pattern" % g)
        for g in range(mcount + 1):
            if mcount - q + 1 <= g:
                newgaps.append(gaps[p + (g - (mcount - q + 1))])
            elif p <= g <= p + q - 1:
                newgaps.append([])
            else:
                newgaps.append(gaps[g])

    content2 = []
    for i in range(mcount):
        content2.extend(newgaps[i])
        content2.append(r)
    content2.extend(newgaps[mcount])
    out = list(rws)
    for pos, j in enumerate(band):
        out[j] = content2[pos]
    return out


def _fall_map(heights, rows, p, q, inverse):
    """Recursive core on (height, 1-row) column lists; both directions."""
    if not heights:
        return list(rows)
    r = max(heights)
    if r <= 1:
        return list(rows)
    cur = list(rows)
    if inverse and sum(1 for v in cur if v == r) >= p + q:
        cur = _fall_move(heights, cur, r, p, q, inverse=True)
    top_count = sum(1 for v in cur if v == r)
    other = [j for j, v in enumerate(cur) if v != r]
    sub_h = [min(heights[j], r - 1) for j in other]
    sub_r = [cur[j] for j in other]
    mapped = _fall_map(sub_h, sub_r, p, q, inverse)
    for idx, j in enumerate(other):
        cur[j] = mapped[idx]
    if not inverse and top_count >= p + q:
        cur = _fall_move(heights, cur, r, p, q, inverse=False)
    return cur


def _check_fall_input(F, word, p, q):
    if F.shape.kind not in ("stack", "ferrers"):
        raise ValueError("need a stack polyomino")
    if not F.is_semi_standard:
        raise ValueError("need a semi-standard filling")
    if filling_contains(F, matrix_of(word, 2)):
        raise ValueError("filling contains the forbidden pattern")


def fall_bijection(F, p, q):
    """Carry fillings avoiding the 2-row pattern with columns 2^p 1 2^q
    to fillings avoiding the one with columns 2^(p+q) 1.

    Preserves the number of 1-cells in every row, and (for p >= 1) the
    falling property in both directions.
    """
    _check_fall_input(F, spq_word(p, q), p, q)
    rows2 = _fall_map(list(F.shape.heights), F.column_rows(), p, q, False)
    out = Filling.from_column_rows(F.shape, rows2)
    if filling_contains(out, matrix_of(spq_word(p + q, 0), 2)):
        raise BijectionInvariantError("image contains the target pattern")
    return out


def fall_bijection_inverse(F, p, q):
    _check_fall_input(F, spq_word(p + q, 0), p, q)
    rows2 = _fall_map(list(F.shape.heights), F.column_rows(), p, q, True)
    out = Filling.from_column_rows(F.shape, rows2)
    if filling_contains(out, matrix_of(spq_word(p, q), 2)):
        raise BijectionInvariantError("preimage contains the source pattern")
    return out


def fall_bijection_sparse(F, p, q, inverse=False):
    """Sparse extension: act on the nonzero columns, freeze the rest."""
    if not F.is_sparse:
        raise ValueError("need a sparse filling")
    rows = F.column_rows()
    nz = [j for j, v in enumerate(rows) if v]
    sub_h = [F.shape.heights[j] for j in nz]
    sub_r = [rows[j] for j in nz]
    mapped = _fall_map(sub_h, sub_r, p, q, inverse)
    out = list(rows)
    for idx, j in enumerate(nz):
        out[j] = mapped[idx]
    return Filling.from_column_rows(F.shape, out)


# ---------------------------------------------------------------------------
# landscape words and shuffles


def landscape_split(p, k):
    """Landscape word of p at level k plus the cluster contents.

    Maximal runs of symbols below k become 'L', runs above k become 'H',
    each occurrence of k itself becomes 'K'.  Returns (word, lows,
    highs) with the cluster contents in order of appearance.
    """
    if k < 2:
        raise ValueError("level must be at least 2")
    word = []
    lows = []
    highs = []
    i, n = 0, len(p)
    while i < n:
        v = p[i]
        if v == k:
            word.append("K")
            i += 1
        elif v < k:
            j = i
            while j < n and p[j] < k:
                j += 1
            word.append("L")
            lows.append(tuple(p[i:j]))
            i = j
        else:
            j = i
            while j < n and p[j] > k:
                j += 1
            word.append("H")
            highs.append(tuple(p[i:j]))
            i = j
    return "".join(word), lows, highs


def landscape(p, k):
    return landscape_split(p, k)[0]


def is_landscape_word(w):
    """First letter L, second (if any) K, no two adjacent L or H."""
    if any(ch not in "LKH" for ch in w):
        return False
    if w == "":
        return True
    if w[0] != "L":
        return False
    if len(w) >= 2 and w[1] != "K":
        return False
    return "LL" not in w and "HH" not in w


def compatible_words(w1, w2):
    return all(w1.count(ch) == w2.count(ch) for ch in "LKH")


def _separations(w, letter, other):
    pos = [i for i, ch in enumerate(w) if ch == letter]
    sep = set()
    for a in range(len(pos)):
        for b in range(a + 1, len(pos)):
            if other in w[pos[a] + 1:pos[b]]:
                sep.add((a, b))
    return sep


def l_compatible(w1, w2):
    """Compatible, with the same pairs of L occurrences separated (by
    an H) in both words."""
    return compatible_words(w1, w2) and \
        _separations(w1, "L", "H") == _separations(w2, "L", "H")


def h_compatible(w1, w2):
    return compatible_words(w1, w2) and \
        _separations(w1, "H", "L") == _separations(w2, "H", "L")


def shuffle(p, k, target):
    """Redistribute the level-k clusters of p into the target word.

    Low clusters fill the L slots in order, high clusters the H slots in
    order, each K slot receives the symbol k.  The target must be a
    landscape word compatible with p's own; the result is again a
    partition, and shuffling back recovers p.
    """
    word, lows, highs = landscape_split(p, k)
    if target == word:
        return tuple(p)
    if not is_landscape_word(target):
        raise ValueError("target is not a landscape word: %r" % target)
    if not compatible_words(word, target):
        raise ValueError("target word is incompatible")
    out = []
    li = hi = 0
    for ch in target:
        if ch == "L":
            out.extend(lows[li])
            li += 1
        elif ch == "K":
            out.append(k)
        else:
            out.extend(highs[hi])
            hi += 1
    res = tuple(out)
    if not validate_partition(res):
        raise BijectionInvariantError("shuffle left canonical form")
    return res


# ---------------------------------------------------------------------------
# the hybrid chains over levels


def _sigma_level_word(word, k, variant, p, q, r, inverse):
    """New landscape word for one level step of the sigma chains, or
    None when the step fixes the partition."""
    kpos = [i for i, ch in enumerate(word) if ch == "K"]
    if variant == "minus":
        if len(kpos) < p + q + r + 1:
            return None
        x_end = kpos[p] + 1
        z_start = kpos[len(kpos) - r] if r > 0 else len(word)
        if x_end > z_start:
            raise BijectionInvariantError("prefix and suffix overlap")
        y = word[x_end:z_start]
        return word[:x_end] + y[::-1] + word[z_start:]

    if len(kpos) < p + 2 + q + r:
        return None
    x_end = kpos[p] + 1
    z_start = kpos[len(kpos) - r] if r > 0 else len(word)
    if not inverse:
        s_end = kpos[p + 1] + 1
        s_part = word[x_end:s_end]
        y = word[s_end:z_start]
        return word[:x_end] + y + s_part[::-1] + word[z_start:]
    middle = word[x_end:z_start]
    last_k = middle.rfind("K")
    if last_k < 0:
        raise BijectionInvariantError("no K inside the middle segment")
    y = middle[:last_k]
    s_rev = middle[last_k:]
    return word[:x_end] + s_rev[::-1] + y + word[z_start:]


def _sigma_level_map(pi, k, variant, p, q, r, inverse):
    word = landscape(pi, k)
    target = _sigma_level_word(word, k, variant, p, q, r, inverse)
    if target is None:
        return pi
    if not is_landscape_word(target):
        raise BijectionInvariantError("level %d produced %r" % (k, target))
    return shuffle(pi, k, target)


def _sigma_patterns(variant, p, q, r):
    if variant == "minus":
        return sigma_plus(p, q, r), sigma_minus(p, q, r)
    if variant == "plus":
        return sigma_plus(p + 1, q, r), sigma_plus(p, q, r + 1)
    raise ValueError("variant must be 'minus' or 'plus'")


def hybrid_chain_sigma(pi, variant, p, q, r):
    """Compose the per-level maps for the sigma families.

    variant "minus" carries avoiders of 1 2^(p+1) 1 2^q 3 2^r onto
    avoiders of 1 2^(p+1) 3 2^q 1 2^r; variant "plus" carries avoiders
    of 1 2^(p+2) 1 2^q 3 2^r onto avoiders of 1 2^(p+1) 1 2^q 3 2^(r+1).
    """
    src, tgt = _sigma_patterns(variant, p, q, r)
    pi = tuple(pi)
    if not avoids(pi, src):
        raise ValueError("input contains the source pattern")
    cur = pi
    for k in range(2, max(len(pi), 2)):
        cur = _sigma_level_map(cur, k, variant, p, q, r, inverse=False)
    if not avoids(cur, tgt):
        raise BijectionInvariantError("image contains the target pattern")
    return cur


def hybrid_chain_sigma_inverse(pi, variant, p, q, r):
    src, tgt = _sigma_patterns(variant, p, q, r)
    pi = tuple(pi)
    if not avoids(pi, tgt):
        raise ValueError("input contains the target pattern")
    cur = pi
    for k in range(max(len(pi), 2) - 1, 1, -1):
        cur = _sigma_level_map(cur, k, variant, p, q, r, inverse=True)
    if not avoids(cur, src):
        raise BijectionInvariantError("preimage contains the source pattern")
    return cur


def _cluster_letter_positions(word, letter):
    return [i for i, ch in enumerate(word) if ch == letter]


def _level_map_124(pi, k, kind, p, q, inverse):
    """One level step of the four suffix-family chains."""
    word, lows, highs = landscape_split(pi, k)
    kpos = _cluster_letter_positions(word, "K")
    hpos = _cluster_letter_positions(word, "H")
    lpos = _cluster_letter_positions(word, "L")
    extra_high = [any(v > k + 1 for v in cl) for cl in highs]
    extra_low = [any(v < k - 1 for v in cl) for cl in lows]

    def ks_in(a, b):
        return sum(1 for i in kpos if a < i < b)

    target = None

    if kind == "2-41":
        if not hpos:
            return pi
        h1 = hpos[0]
        cand = None
        for idx, pos in enumerate(hpos):
            if extra_high[idx] and ks_in(h1, pos) >= p:
                cand = pos
                break
        if cand is None or ks_in(cand, len(word)) < q:
            return pi
        if not inverse:
            tail_ks = [i for i in kpos if i > cand][-q:]
            y = word[cand + 1:tail_ks[0]]
            if "L" in y:
                raise BijectionInvariantError("segment before the tail keys"
                                              " contains a low cluster")
            segs = [word[tail_ks[i] + 1:tail_ks[i + 1]] for i in range(q - 1)]
            segs.append(word[tail_ks[-1] + 1:])
            s1 = segs[0]
            hstar = "H" if s1.startswith("H") else ""
            s1m = s1[len(hstar):]
            target = (word[:cand + 1] + s1m
                      + "".join("K" + segs[i] for i in range(1, q))
                      + "K" + hstar + y)
        else:
            rest = word[cand + 1:]
            rks = [i for i, ch in enumerate(rest) if ch == "K"][:q]
            s1m = rest[:rks[0]]
            segs = [rest[rks[i] + 1:rks[i + 1]] for i in range(q - 1)]
            tail = rest[rks[-1] + 1:]
            hstar = "H" if tail.startswith("H") else ""
            y = tail[len(hstar):]
            s_list = [hstar + s1m] + segs
            target = (word[:cand + 1] + y
                      + "".join("K" + s for s in s_list))

    elif kind == "2-14":
        if not hpos:
            return pi
        h1 = hpos[0]
        cand = None
        for idx in range(len(hpos) - 1, -1, -1):
            if extra_high[idx] and ks_in(hpos[idx], len(word)) >= q:
                cand = hpos[idx]
                break
        if cand is None or ks_in(h1, cand) < p:
            return pi
        middle = word[h1 + 1:cand]
        mks = [i for i, ch in enumerate(middle) if ch == "K"]
        if not inverse:
            v = mks[:p]
            segs = [middle[:v[0]]]
            segs += [middle[v[i] + 1:v[i + 1]] for i in range(p - 1)]
            y = middle[v[-1] + 1:]
            if "L" in y:
                raise BijectionInvariantError("segment before the extra-high"
                                              " cluster contains a low cluster")
            sp = segs[p - 1]
            hstar = "H" if sp.endswith("H") else ""
            spm = sp[:len(sp) - len(hstar)]
            if p == 1:
                inner = [hstar + spm]
            else:
                inner = [hstar + segs[0]] + segs[1:p - 1] + [spm]
            target = (word[:h1 + 1] + y[::-1]
                      + "".join("K" + s for s in inner)
                      + word[cand:])
        else:
            v = mks[len(mks) - p:]
            ybar = middle[:v[0]]
            segs = [middle[v[i] + 1:v[i + 1]] for i in range(p - 1)]
            segs.append(middle[v[-1] + 1:])
            first = segs[0]
            hstar = "H" if first.startswith("H") else ""
            core = first[len(hstar):]
            if p == 1:
                s_list = [core + hstar]
            else:
                s_list = [core] + segs[1:p - 1] + [segs[p - 1] + hstar]
            target = (word[:h1 + 1]
                      + "".join(s_list[i] + "K" for i in range(p))
                      + ybar[::-1] + word[cand:])

    elif kind == "3-14":
        cand = None
        for idx, pos in enumerate(lpos):
            if extra_low[idx] and ks_in(-1, pos) >= p + 1:
                cand = pos
                break
        if cand is None or ks_in(cand, len(word)) < q:
            return pi
        rest = word[cand + 1:]
        rks = [i for i, ch in enumerate(rest) if ch == "K"]
        if not inverse:
            u = rks[:q]
            segs = [rest[:u[0]]]
            segs += [rest[u[i] + 1:u[i + 1]] for i in range(q - 1)]
            y = rest[u[-1] + 1:]
            if "H" in y:
                raise BijectionInvariantError("suffix after the tail keys"
                                              " contains a high cluster")
            lstar = "L" if y.startswith("L") else ""
            ym = y[len(lstar):]
            inner = [lstar + segs[0]] + segs[1:]
            target = (word[:cand + 1] + ym
                      + "".join("K" + s for s in inner))
        else:
            u = rks[len(rks) - q:]
            ym = rest[:u[0]]
            segs = [rest[u[i] + 1:u[i + 1]] for i in range(q - 1)]
            segs.append(rest[u[-1] + 1:])
            first = segs[0]
            lstar = "L" if first.startswith("L") else ""
            s1 = first[len(lstar):]
            s_list = [s1] + segs[1:]
            y = lstar + ym
            target = (word[:cand + 1]
                      + "".join(s_list[i] + "K" for i in range(q))
                      + y)

    elif kind == "3-41":
        if p == 0:
            return pi
        cand = None
        for idx in range(len(lpos) - 1, -1, -1):
            if extra_low[idx] and ks_in(lpos[idx], len(word)) >= q:
                cand = lpos[idx]
                break
        if cand is None or ks_in(-1, cand) < p + 1:
            return pi
        if len(word) < 2 or word[1] != "K":
            raise BijectionInvariantError("landscape word must start LK")
        middle = word[2:cand]
        mks = [i for i, ch in enumerate(middle) if ch == "K"]
        if not inverse:
            v = mks[:p]
            segs = [middle[:v[0]]]
            segs += [middle[v[i] + 1:v[i + 1]] for i in range(p - 1)]
            y = middle[v[-1] + 1:]
            if "H" in y:
                raise BijectionInvariantError("segment before the extra-low"
                                              " cluster contains a high cluster")
            sp = segs[p - 1]
            lstar = "L" if sp.endswith("L") else ""
            spm = sp[:len(sp) - len(lstar)]
            target = (word[:2] + lstar + y[::-1]
                      + "".join("K" + s for s in segs[:p - 1])
                      + "K" + spm + word[cand:])
        else:
            v = mks[len(mks) - p:]
            head = middle[:v[0]]
            lstar = "L" if head.startswith("L") else ""
            ybar = head[len(lstar):]
            segs = [middle[v[i] + 1:v[i + 1]] for i in range(p - 1)]
            segs.append(middle[v[-1] + 1:])
            if p == 1:
                s_list = [segs[0] + lstar]
            else:
                s_list = segs[:p - 1] + [segs[p - 1] + lstar]
            target = (word[:2]
                      + "".join(s_list[i] + "K" for i in range(p))
                      + ybar[::-1] + word[cand:])

    else:
        raise ValueError("unknown kind %r" % (kind,))

    if target is None or target == word:
        return pi
    if not is_landscape_word(target):
        raise BijectionInvariantError(
            "kind %s level %d produced a non-landscape word %r"
            % (kind, k, target))
    if kind.startswith("2") and not l_compatible(word, target):
        raise BijectionInvariantError("words are not L-compatible")
    if kind.startswith("3") and not h_compatible(word, target):
        raise BijectionInvariantError("words are not H-compatible")
    return shuffle(pi, k, target)


def hybrid_chain_124(pi, kind, p, q):
    """Compose the level maps of the chosen suffix family (see
    :func:`pattern_pair_124`), carrying source avoiders to target
    avoiders."""
    src, tgt = pattern_pair_124(kind, p, q)
    pi = tuple(pi)
    if not avoids(pi, src):
        raise ValueError("input contains the source pattern")
    if src == tgt:
        return pi
    cur = pi
    for k in range(2, max(len(pi), 2)):
        cur = _level_map_124(cur, k, kind, p, q, inverse=False)
    if not avoids(cur, tgt):
        raise BijectionInvariantError("image contains the target pattern")
    return cur


def hybrid_chain_124_inverse(pi, kind, p, q):
    src, tgt = pattern_pair_124(kind, p, q)
    pi = tuple(pi)
    if not avoids(pi, tgt):
        raise ValueError("input contains the target pattern")
    if src == tgt:
        return pi
    cur = pi
    for k in range(max(len(pi), 2) - 1, 1, -1):
        cur = _level_map_124(cur, k, kind, p, q, inverse=True)
    if not avoids(cur, src):
        raise BijectionInvariantError("preimage contains the source pattern")
    return cur


# ---------------------------------------------------------------------------
# tails of 1123-avoiders


def is_123_avoiding(s):
    """No i < j < l with s_i < s_j < s_l."""
    seen_min = None   # smallest value so far
    mid_min = None    # smallest value with a smaller one before it
    for v in s:
        if mid_min is not None and v > mid_min:
            return False
        if seen_min is None or v < seen_min:
            seen_min = v
        elif v > seen_min and (mid_min is None or v < mid_min):
            mid_min = v
    return True


def tail_rank(s):
    """Length plus maximum minus one."""
    if not s:
        raise ValueError("empty sequence has no rank")
    return len(s) + max(s) - 1


def tail_decompose(p):
    """Split a 1123-avoider as the increasing run 1 2 ... (m-1) followed
    by its tail, a 123-avoiding sequence of rank n with maximum m."""
    assert_partition(p)
    if not avoids(p, (1, 1, 2, 3)):
        raise ValueError("input contains 1123")
    if not p:
        return 0, ()
    m = max(p)
    prefix = tuple(range(1, m))
    if p[:m - 1] != prefix:
        raise BijectionInvariantError("1123-avoider missing its increasing run")
    tail = p[m - 1:]
    if not is_123_avoiding(tail):
        raise BijectionInvariantError("tail is not 123-avoiding")
    return m, tail


def tail_compose(m, tail):
    p = tuple(range(1, m)) + tuple(tail)
    assert_partition(p)
    return p


def _tail_split(s, k):
    if not s or s[-1] != k:
        raise ValueError("sequence must end with %d" % k)
    body = list(s[:-1])
    b = 0
    while body and body[-1] == 1:
        body.pop()
        b += 1
    return tuple(body), b


def tail_f1(s, k):
    """First injection: for tails S_0 1^b k whose S_0 ends with a value
    at least k, drop the final k and move the padding to value k-1.

    At k = 1 the padding value and the padding symbol coincide, so the
    map degenerates to dropping the final symbol (the only choice whose
    image lands in the stated range).
    """
    s0, b = _tail_split(s, k)
    if not s0 or s0[-1] < k:
        raise ValueError("f1 needs a nonempty head ending at >= %d" % k)
    if k == 1:
        return s0 + (1,) * b
    return s0 + (k - 1,) * b


def tail_f2(s, k):
    """Second injection: for the remaining tails, lower the head by one
    and extend the padding (for k = 1: the all-ones tail just shrinks)."""
    s0, b = _tail_split(s, k)
    if s0 and s0[-1] >= k:
        raise ValueError("f2 needs an empty head or one ending below %d" % k)
    if k == 1:
        if s0:
            raise ValueError("f2 at k=1 only covers the all-ones tail")
        return (1,) * b
    if any(x == 1 for x in s0):
        raise BijectionInvariantError("head of a 123-avoiding tail ending"
                                      " below k cannot contain 1")
    return tuple(x - 1 for x in s0) + (k - 1,) * (b + 1)


def tail_step_inverse(s, k):
    """Recover the rank-(n) tail ending in k from its image of rank n-1.

    Splits the image at its trailing run of k-1 and undoes whichever
    injection produced it; for k = 1 it simply appends the final 1.
    """
    if k == 1:
        return tuple(s) + (1,)
    body = list(s)
    c = 0
    while body and body[-1] == k - 1:
        body.pop()
        c += 1
    s0 = tuple(body)
    if s0 and s0[-1] >= k:
        return s0 + (1,) * c + (k,)
    if c < 1:
        raise ValueError("image of f2 needs at least one trailing %d" % (k - 1))
    return tuple(x + 1 for x in s0) + (1,) * (c - 1) + (k,)


# ---------------------------------------------------------------------------
# pseudoswap, key-row raising, and the 12112 <-> 12212 bijection

PATTERN_12112 = (1, 2, 1, 1, 2)
PATTERN_12212 = (1, 2, 2, 1, 2)


def _cols_of(M):
    cols = [0] * M.cols
    for (r, c) in M.ones:
        if cols[c - 1]:
            raise ValueError("matrix is not sparse")
        cols[c - 1] = r
    return cols


def _from_cols(cols, m):
    return Matrix01(m, len(cols),
                    frozenset((r, j + 1) for j, r in enumerate(cols) if r))


def _pair_contains_12112(cols, x, y):
    pat = (x, y, x, x, y)
    j = 0
    for v in cols:
        if v == pat[j]:
            j += 1
            if j == 5:
                return True
    return False


def matrix_avoids_12112(M):
    """No pair of rows x < y holds the two-row pattern 12112."""
    cols = _cols_of(M)
    for x in range(1, M.rows):
        for y in range(x + 1, M.rows + 1):
            if _pair_contains_12112(cols, x, y):
                return False
    return True


def _row_cols(cols, row):
    return [j for j, v in enumerate(cols) if v == row]


def pseudoswap(M, x):
    """Exchange rows x and x+1 of a sparse matrix, freezing all but the
    last rear 1-cell of the upper row when there are several.

    Requires the two rows to avoid 12112 between them and the upper row
    to be nested inside the lower one (first and last 1-cells of row x
    strictly surround those of row x+1).
    """
    cols = _cols_of(M)
    y = x + 1
    if not (1 <= x < M.rows):
        raise ValueError("row out of range")
    xc = _row_cols(cols, x)
    yc = _row_cols(cols, y)
    if not xc or not yc:
        raise ValueError("both rows must be nonempty")
    if not (xc[0] < yc[0] <= yc[-1] < xc[-1]):
        raise ValueError("row %d must nest inside row %d" % (y, x))
    if _pair_contains_12112(cols, x, y):
        raise ValueError("rows %d,%d contain 12112" % (x, y))
    seps = [j for j in xc if yc[0] < j < yc[-1]]
    if len(seps) > 1:
        raise BijectionInvariantError("several separating columns")
    rear = [j for j in yc if seps and j > seps[0]]
    if len(rear) <= 1:
        keep = set()
    else:
        keep = set(rear[:-1])
    out = list(cols)
    for j in xc:
        out[j] = y
    for j in yc:
        out[j] = y if j in keep else x
    res = _from_cols(out, M.rows)
    if _pair_contains_12112(out, x, y):
        raise BijectionInvariantError("pseudoswap created 12112")
    return res


def pseudoswap_inverse(M, x):
    """Undo :func:`pseudoswap`: freeze all but the first middle 1-cell
    of the upper row when there are several."""
    cols = _cols_of(M)
    y = x + 1
    xc = _row_cols(cols, x)
    yc = _row_cols(cols, y)
    if not xc or not yc:
        raise ValueError("both rows must be nonempty")
    if not (yc[0] < xc[0] <= xc[-1] < yc[-1]):
        raise ValueError("row %d must nest inside row %d" % (x, y))
    if _pair_contains_12112(cols, x, y):
        raise ValueError("rows %d,%d contain 12112" % (x, y))
    if len(xc) >= 2:
        middles = [j for j in yc if xc[-2] < j < xc[-1]]
    else:
        middles = []
    if len(middles) < 2:
        keep = set()
    else:
        keep = set(middles[1:])
    out = list(cols)
    for j in xc:
        out[j] = y
    for j in yc:
        out[j] = y if j in keep else x
    res = _from_cols(out, M.rows)
    if _pair_contains_12112(out, x, y):
        raise BijectionInvariantError("inverse pseudoswap created 12112")
    return res


def _first_last_rows(cols, m):
    first = [None] * (m + 1)
    last = [None] * (m + 1)
    for j, v in enumerate(cols):
        if v:
            last[v] = j
            if first[v] is None:
                first[v] = j
    return first, last


def is_kpq_matrix(M, k, p, q):
    """The intermediate shape of the key-row raising procedure.

    Row p is the key row: erasing it leaves a level-k mixed-canonical
    matrix, its first 1-cell precedes the first 1-cell of every row from
    k up, and q marks the topmost row whose last 1-cell still lies left
    of the key row's.
    """
    cols = _cols_of(M)
    m = M.rows
    if not (1 <= k <= p <= q <= m):
        return False
    if 0 in cols:
        return False
    first, last = _first_last_rows(cols, m)
    if any(first[i] is None for i in range(1, m + 1)):
        return False
    for i in range(1, k):
        for j in range(i + 1, m + 1):
            if j != p and first[i] > first[j]:
                return False
    for i in range(k, m + 1):
        for j in range(i + 1, m + 1):
            if i != p and j != p and last[i] > last[j]:
                return False
    for i in range(1, k):
        if first[i] > first[p]:
            return False
    for j in range(k, m + 1):
        if j != p and first[p] > first[j]:
            return False
    # rows k..q (and only those) end no later than the key row
    below = {j for j in range(k, m + 1) if last[j] <= last[p]}
    return below == set(range(k, q + 1))


def key_row_raise(M, k, p, q):
    """One step of the key-row raising: carry a 12112-avoiding matrix of
    stage (k, p, q) to one of stage (k, p+1, q).

    Pseudoswap of rows p and p+1; when that leaves stray 1-cells above
    (several rear cells in the upper row), additionally slide the
    offending columns past the frozen block, preserving both internal
    orders.
    """
    if not is_kpq_matrix(M, k, p, q):
        raise ValueError("not a (%d,%d,%d)-matrix" % (k, p, q))
    if p >= q:
        raise ValueError("key row already at its target")
    if not matrix_avoids_12112(M):
        raise ValueError("matrix contains 12112")
    cols = _cols_of(M)
    xc = _row_cols(cols, p)
    yc = _row_cols(cols, p + 1)
    seps = [j for j in xc if yc[0] < j < yc[-1]]
    rear = [j for j in yc if seps and j > seps[0]]
    r = len(rear)

    Mp = pseudoswap(M, p)
    if r <= 1:
        out = Mp
    else:
        sep = seps[0]
        i_idx = xc.index(sep)
        b_prev = xc[i_idx - 1] if i_idx > 0 else -1
        c1 = yc[0]
        d_rm1 = rear[-2]
        y_rows = set()
        first, _ = _first_last_rows(cols, M.rows)
        for row in range(p + 2, M.rows + 1):
            if first[row] < d_rm1:
                y_rows.add(row)
        y1 = [j for j, v in enumerate(cols)
              if v in y_rows and b_prev < j < c1]
        cols2 = _cols_of(Mp)
        delta = _row_cols(cols2, p)
        mid = [j for j in _row_cols(cols2, p + 1)
               if len(delta) >= 2 and delta[-2] < j < delta[-1]]
        if len(mid) != r:
            raise BijectionInvariantError(
                "pseudoswap should turn %d rear cells into middles" % r)
        zcols = delta[:-1] + mid[:-1]
        positions = sorted(y1 + zcols)
        contents = [cols2[j] for j in zcols] + [cols2[j] for j in y1]
        for pos, val in zip(positions, contents):
            cols2[pos] = val
        out = _from_cols(cols2, M.rows)

    if not matrix_avoids_12112(out):
        raise BijectionInvariantError("key-row raise created 12112")
    if not is_kpq_matrix(out, k, p + 1, q):
        raise BijectionInvariantError("key-row raise left stage (k,p+1,q)")
    return out


def key_row_lower(M, k, p, q):
    """Inverse of :func:`key_row_raise`: stage (k, p+1, q) back to
    (k, p, q)."""
    if not is_kpq_matrix(M, k, p + 1, q):
        raise ValueError("not a (%d,%d,%d)-matrix" % (k, p + 1, q))
    if not matrix_avoids_12112(M):
        raise ValueError("matrix contains 12112")
    cols = _cols_of(M)
    xc = _row_cols(cols, p)
    yc = _row_cols(cols, p + 1)
    if len(xc) >= 2:
        middles = [j for j in yc if xc[-2] < j < xc[-1]]
    else:
        middles = []
    if len(middles) < 2:
        out = pseudoswap_inverse(M, p)
    else:
        beta_r = middles[-1]
        beta_rm1 = middles[-2]
        first, _ = _first_last_rows(cols, M.rows)
        y_rows = {row for row in range(p + 2, M.rows + 1)
                  if first[row] is not None and first[row] < beta_r}
        ystar = [j for j, v in enumerate(cols)
                 if v in y_rows and beta_rm1 < j < beta_r]
        zcols = xc[:-1] + middles[:-1]
        positions = sorted(ystar + zcols)
        contents = [cols[j] for j in ystar] + [cols[j] for j in zcols]
        cols2 = list(cols)
        for pos, val in zip(positions, contents):
            cols2[pos] = val
        out = pseudoswap_inverse(_from_cols(cols2, M.rows), p)

    if not matrix_avoids_12112(out):
        raise BijectionInvariantError("key-row lower created 12112")
    if not is_kpq_matrix(out, k, p, q):
        raise BijectionInvariantError("key-row lower left stage (k,p,q)")
    return out


def bijection_12112_12212(pi):
    """Block-count-preserving bijection from 12112-avoiding partitions
    to 12212-avoiding partitions.

    For each level k from the top down, raise the key row until the
    matrix is level-k mixed canonical; finish with the reverse
    complement.
    """
    pi = tuple(pi)
    assert_partition(pi)
    if not avoids(pi, PATTERN_12112):
        raise ValueError("input contains 12112")
    if not pi:
        return ()
    m = max(pi)
    M = _from_cols(list(pi), m)
    for k in range(m - 1, 0, -1):
        cols = _cols_of(M)
        _, last = _first_last_rows(cols, m)
        q = max(j for j in range(1, m + 1) if last[j] <= last[k])
        p = k
        while p < q:
            M = key_row_raise(M, k, p, q)
            p += 1
    seq = tuple(_cols_of(M))
    res = reverse_complement(seq, m)
    if not validate_partition(res) or not avoids(res, PATTERN_12212):
        raise BijectionInvariantError("pipeline left the 12212 class")
    return res


def bijection_12112_12212_inverse(pi):
    pi = tuple(pi)
    assert_partition(pi)
    if not avoids(pi, PATTERN_12212):
        raise ValueError("input contains 12212")
    if not pi:
        return ()
    m = max(pi)
    seq = reverse_complement(pi, m)
    M = _from_cols(list(seq), m)
    for k in range(1, m):
        cols = _cols_of(M)
        first, _ = _first_last_rows(cols, m)
        q = min(range(k, m + 1), key=lambda j: first[j])
        for p in range(q - 1, k - 1, -1):
            M = key_row_lower(M, k, p, q)
    res = tuple(_cols_of(M))
    if not validate_partition(res) or not avoids(res, PATTERN_12112):
        raise BijectionInvariantError("pipeline left the 12112 class")
    return res


# ---------------------------------------------------------------------------
# experimental partition-level wrappers over the falling bijection


def spq1_patterns(tau, p, q):
    """Pattern pair tau (1^p 2 1^q + k) and tau (1^(p+q) 2 + k) for a
    partition tau with k blocks."""
    k = max(tau)
    src = tuple(tau) + tuple(x + k for x in ones_pattern(p, p + q))
    tgt = tuple(tau) + tuple(x + k for x in ones_pattern(p + q, p + q))
    return src, tgt


def _green_thresholds(pi, ref, restrict):
    """Least starting row of the green cells per column; m+1 for none.

    restrict(j) yields the host word a cell in column j may use;
    green(i, j) holds iff that word, cut below row i, contains ref.
    """
    m = max(pi)
    thresholds = []
    for j in range(1, len(pi) + 1):
        row = m + 1
        base = restrict(j)
        for i in range(m + 1, 0, -1):
            word = tuple(v for v in base if v <= i - 1)
            if contains(word, ref):
                row = i
            else:
                break
        thresholds.append(row)
    return thresholds


def _apply_green_fall(pi, thresholds, p, q, inverse):
    """Flip the green region upside down, run the sparse falling
    bijection, and write the moved 1-cells back."""
    m = max(pi)
    n = len(pi)
    green_cols = [j for j in range(n) if thresholds[j] <= m]
    if not green_cols:
        return tuple(pi)
    heights = [m + 1 - thresholds[j] for j in green_cols]
    rows = []
    for j in green_cols:
        if pi[j] >= thresholds[j]:
            rows.append(m + 1 - pi[j])
        else:
            rows.append(0)
    shape = Shape.stack(tuple(heights))
    filling = Filling.from_column_rows(shape, rows)
    moved = fall_bijection_sparse(filling, p, q, inverse=inverse)
    moved_rows = moved.column_rows()
    out = list(pi)
    for idx, j in enumerate(green_cols):
        r = moved_rows[idx]
        if r:
            out[j] = m + 1 - r
    res = tuple(out)
    if not validate_partition(res):
        raise BijectionInvariantError("green rewrite left canonical form")
    return res


def spq1_partition_map(pi, tau, p, q, inverse=False):
    """Experimental: the partition-level bijection behind the pattern
    pair of :func:`spq1_patterns`.

    Colors green the cells whose lower-left submatrix contains tau,
    flips that region, and runs the falling bijection on it.
    """
    src, tgt = spq1_patterns(tau, p, q)
    before, after = (tgt, src) if inverse else (src, tgt)
    pi = tuple(pi)
    assert_partition(pi)
    if not avoids(pi, before):
        raise ValueError("input contains the pattern")
    if not pi:
        return ()
    thresholds = _green_thresholds(
        pi, tuple(tau),
        lambda j: [pi[c] for c in range(j - 1)])
    res = _apply_green_fall(pi, thresholds, p, q, inverse)
    if not avoids(res, after):
        raise BijectionInvariantError("image contains the pattern")
    return res


def spq2_patterns(T, k, p, q):
    """Pattern pair 12..k (1^p 2 1^q + k) T and 12..k (1^(p+q) 2 + k) T
    for a sequence T over [k]."""
    prefix = tuple(range(1, k + 1))
    src = prefix + tuple(x + k for x in ones_pattern(p, p + q)) + tuple(T)
    tgt = prefix + tuple(x + k for x in ones_pattern(p + q, p + q)) + tuple(T)
    return src, tgt


def spq2_partition_map(pi, T, k, p, q, inverse=False):
    """Experimental: the partition-level bijection behind the pattern
    pair of :func:`spq2_patterns`, with the green region read from the
    lower-right submatrices."""
    src, tgt = spq2_patterns(T, k, p, q)
    before, after = (tgt, src) if inverse else (src, tgt)
    pi = tuple(pi)
    assert_partition(pi)
    if not avoids(pi, before):
        raise ValueError("input contains the pattern")
    if not pi:
        return ()
    n = len(pi)
    thresholds = _green_thresholds(
        pi, tuple(T),
        lambda j: [pi[c] for c in range(j, n)])
    res = _apply_green_fall(pi, thresholds, p, q, inverse)
    if not avoids(res, after):
        raise BijectionInvariantError("image contains the pattern")
    return res
