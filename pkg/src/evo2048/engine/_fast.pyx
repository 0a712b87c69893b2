# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled engine kernels; twin of ``_pure``.

Every result — including every floating-point value — must be
bit-identical to the pure backend: same slide tables, same xoshiro256**
recurrence, same draw order, same float accumulation order. The build
disables FP contraction so double rounding matches CPython exactly.
"""

from libc.stdint cimport int32_t, int64_t, uint16_t, uint32_t, uint64_t

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t mul_shift64(uint64_t x, uint64_t n) {
        return (uint64_t)(((__uint128_t)x * (__uint128_t)n) >> 64);
    }
    """
    uint64_t mul_shift64(uint64_t x, uint64_t n) nogil

BACKEND_NAME = "fast"

EXPONENT_CAP = 15
SCORE_NORM = 1000.0
SPAWN_TWO_PROB = 0.9
POLICY_UNIFORM = 0
POLICY_GREEDY = 1

DEF CAP = 15
DEF NORM = 1000.0
DEF TWO_PROB = 0.9

cdef double INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53

# ---------------------------------------------------------------------------
# Row tables

cdef uint16_t ROW_LEFT_NEW[65536]
cdef uint16_t ROW_RIGHT_NEW[65536]
cdef int32_t ROW_LEFT_SCORE[65536]
cdef int32_t ROW_RIGHT_SCORE[65536]


cdef uint16_t _reflect(uint16_t row) nogil:
    return (((row & 0x000F) << 12)
            | ((row & 0x00F0) << 4)
            | ((row & 0x0F00) >> 4)
            | ((row & 0xF000) >> 12))


cdef void _init_tables():
    cdef uint32_t row
    cdef int cells[4]
    cdef int tight[4]
    cdef int out[4]
    cdef int i, n, m, e
    cdef int32_t score
    cdef uint16_t packed
    for row in range(65536):
        for i in range(4):
            cells[i] = (row >> (4 * i)) & 0xF
        n = 0
        for i in range(4):
            if cells[i]:
                tight[n] = cells[i]
                n += 1
        m = 0
        score = 0
        i = 0
        while i < n:
            if i + 1 < n and tight[i] == tight[i + 1] and tight[i] < CAP:
                e = tight[i] + 1
                out[m] = e
                score += (<int32_t>1) << e
                m += 1
                i += 2
            else:
                out[m] = tight[i]
                m += 1
                i += 1
        packed = 0
        for i in range(m):
            packed |= out[i] << (4 * i)
        ROW_LEFT_NEW[row] = packed
        ROW_LEFT_SCORE[row] = score
    for row in range(65536):
        ROW_RIGHT_NEW[row] = _reflect(ROW_LEFT_NEW[_reflect(<uint16_t>row)])
        ROW_RIGHT_SCORE[row] = ROW_LEFT_SCORE[_reflect(<uint16_t>row)]


_init_tables()


# ---------------------------------------------------------------------------
# Board mechanics

cdef uint64_t _transpose(uint64_t board) nogil:
    cdef uint64_t a1 = board & 0xF0F00F0FF0F00F0FULL
    cdef uint64_t a2 = board & 0x0000F0F00000F0F0ULL
    cdef uint64_t a3 = board & 0x0F0F00000F0F0000ULL
    cdef uint64_t a = a1 | (a2 << 12) | (a3 >> 12)
    cdef uint64_t b1 = a & 0xFF00FF0000FF00FFULL
    cdef uint64_t b2 = a & 0x00FF00FF00000000ULL
    cdef uint64_t b3 = a & 0x00000000FF00FF00ULL
    return b1 | (b2 >> 24) | (b3 << 24)


cdef int _slide_c(uint64_t board, int direction, uint64_t* out) nogil:
    """Returns the score delta; *out receives the new board."""
    cdef uint64_t src = board
    cdef uint64_t new = 0
    cdef int32_t score = 0
    cdef int r
    cdef uint32_t row
    if direction == 0 or direction == 1:
        src = _transpose(src)
    for r in range(4):
        row = <uint32_t>((src >> (16 * r)) & 0xFFFF)
        if direction == 3 or direction == 1:
            new |= (<uint64_t>ROW_RIGHT_NEW[row]) << (16 * r)
            score += ROW_RIGHT_SCORE[row]
        else:
            new |= (<uint64_t>ROW_LEFT_NEW[row]) << (16 * r)
            score += ROW_LEFT_SCORE[row]
    if direction == 0 or direction == 1:
        new = _transpose(new)
    out[0] = new
    return score


cdef int _count_empty_c(uint64_t board) nogil:
    cdef int n = 0
    cdef int i
    for i in range(16):
        if ((board >> (4 * i)) & 0xF) == 0:
            n += 1
    return n


cdef int _max_exponent_c(uint64_t board) nogil:
    cdef int m = 0
    cdef int i, e
    for i in range(16):
        e = <int>((board >> (4 * i)) & 0xF)
        if e > m:
            m = e
    return m


cdef int _legal_mask_c(uint64_t board) nogil:
    cdef int mask = 0
    cdef int d
    cdef uint64_t nb
    for d in range(4):
        _slide_c(board, d, &nb)
        if nb != board:
            mask |= 1 << d
    return mask


def slide(board, int direction):
    """Apply one slide; returns (new_board, score_delta, moved)."""
    cdef uint64_t b = <uint64_t>board
    cdef uint64_t nb
    cdef int score
    if direction < 0 or direction > 3:
        raise ValueError(f"direction must be 0..3, got {direction}")
    score = _slide_c(b, direction, &nb)
    return nb, score, nb != b


def legal_mask(board):
    return _legal_mask_c(<uint64_t>board)


def count_empty(board):
    return _count_empty_c(<uint64_t>board)


def max_exponent(board):
    return _max_exponent_c(<uint64_t>board)


def kth_empty(board, int k):
    """Cell index of the k-th empty cell in scan order (k from 0)."""
    cdef uint64_t b = <uint64_t>board
    cdef int i
    for i in range(16):
        if ((b >> (4 * i)) & 0xF) == 0:
            if k == 0:
                return i
            k -= 1
    raise ValueError("fewer empty cells than k")


def set_cell(board, int cell, int exponent):
    cdef uint64_t b = <uint64_t>board
    return b | ((<uint64_t>exponent) << (4 * cell))


def transpose(board):
    return _transpose(<uint64_t>board)


# ---------------------------------------------------------------------------
# RNG (xoshiro256** seeded through splitmix64) — twin of evo2048.rng

cdef struct Xo:
    uint64_t s0
    uint64_t s1
    uint64_t s2
    uint64_t s3


cdef inline uint64_t _rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t _splitmix_next(uint64_t* state) nogil:
    state[0] = state[0] + <uint64_t>0x9E3779B97F4A7C15ULL
    return _mix64(state[0])


cdef void _xo_seed(Xo* xo, uint64_t seed) nogil:
    cdef uint64_t st = seed
    xo.s0 = _splitmix_next(&st)
    xo.s1 = _splitmix_next(&st)
    xo.s2 = _splitmix_next(&st)
    xo.s3 = _splitmix_next(&st)


cdef inline uint64_t _xo_next(Xo* xo) nogil:
    cdef uint64_t s1 = xo.s1
    cdef uint64_t result = _rotl(s1 * 5, 7) * 9
    cdef uint64_t t = s1 << 17
    xo.s2 ^= xo.s0
    xo.s3 ^= s1
    xo.s1 ^= xo.s2
    xo.s0 ^= xo.s3
    xo.s2 ^= t
    xo.s3 = _rotl(xo.s3, 45)
    return result


cdef inline double _xo_random(Xo* xo) nogil:
    return <double>(_xo_next(xo) >> 11) * INV_2_53


cdef inline uint64_t _xo_randbelow(Xo* xo, uint64_t n) nogil:
    return mul_shift64(_xo_next(xo), n)


cdef inline uint64_t _derive2(uint64_t key, uint64_t a, uint64_t b) nogil:
    cdef uint64_t s = key
    s = _mix64((s ^ a) + <uint64_t>0x9E3779B97F4A7C15ULL)
    s = _mix64((s ^ b) + <uint64_t>0x9E3779B97F4A7C15ULL)
    return s


def rng_u64_sequence(seed, int n):
    """First n raw outputs of the generator; used for backend cross-checks."""
    cdef Xo xo
    _xo_seed(&xo, <uint64_t>seed)
    out = []
    cdef int i
    for i in range(n):
        out.append(_xo_next(&xo))
    return out


# ---------------------------------------------------------------------------
# Heuristic terms — same accumulation orders as the pure backend

cdef void _extract(uint64_t board, int* exps) nogil:
    cdef int i
    for i in range(16):
        exps[i] = <int>((board >> (4 * i)) & 0xF)


cdef void _max_cell(int* exps, int* best, int* idx) nogil:
    cdef int i
    best[0] = 0
    idx[0] = 0
    for i in range(16):
        if exps[i] > best[0]:
            best[0] = exps[i]
            idx[0] = i


cdef double _t_empty(uint64_t board) nogil:
    return _count_empty_c(board) / 16.0


cdef double _t_highest(uint64_t board) nogil:
    cdef int e = _max_exponent_c(board)
    if e >= 11:
        return 1.0
    return e / 11.0


cdef double _t_corner_bonus(uint64_t board) nogil:
    cdef int exps[16]
    cdef int e, idx, r, c
    _extract(board, exps)
    _max_cell(exps, &e, &idx)
    if e == 0:
        return 0.0
    r = idx >> 2
    c = idx & 3
    if r == 3 and (c == 0 or c == 3):
        return 1.0
    if r == 0 and (c == 0 or c == 3):
        return 0.5
    if r == 3:
        return 0.25
    return 0.0


cdef double _t_corner_proximity(uint64_t board) nogil:
    cdef int exps[16]
    cdef int e, idx, r, c, i, dr, dc
    cdef double br, other, prox
    cdef int corners_r[3]
    cdef int corners_c[3]
    corners_r[0] = 0; corners_c[0] = 0
    corners_r[1] = 0; corners_c[1] = 3
    corners_r[2] = 3; corners_c[2] = 0
    _extract(board, exps)
    _max_cell(exps, &e, &idx)
    if e == 0:
        return 0.0
    r = idx >> 2
    c = idx & 3
    br = 1.0 - ((3 - r) + (3 - c)) / 6.0
    other = 0.0
    for i in range(3):
        dr = r - corners_r[i]
        if dr < 0:
            dr = -dr
        dc = c - corners_c[i]
        if dc < 0:
            dc = -dc
        prox = 1.0 - (dr + dc) / 6.0
        if prox > other:
            other = prox
    return 0.7 * br + 0.3 * other


cdef double _t_bottom_row(uint64_t board) nogil:
    cdef int exps[16]
    cdef int64_t total = 0, bottom = 0
    cdef int i
    _extract(board, exps)
    for i in range(16):
        if exps[i]:
            total += (<int64_t>1) << exps[i]
            if i >= 12:
                bottom += (<int64_t>1) << exps[i]
    if total == 0:
        return 0.0
    return bottom / (<double>total)


cdef double _t_merge_value(uint64_t board) nogil:
    cdef int exps[16]
    cdef int64_t total = 0, pair_value = 0
    cdef int r, c, e, i
    _extract(board, exps)
    for i in range(16):
        if exps[i]:
            total += (<int64_t>1) << exps[i]
    for r in range(4):
        for c in range(4):
            e = exps[4 * r + c]
            if e == 0:
                continue
            if c < 3 and exps[4 * r + c + 1] == e:
                pair_value += (<int64_t>1) << e
            if r < 3 and exps[4 * r + c + 4] == e:
                pair_value += (<int64_t>1) << e
    if total == 0:
        return 0.0
    return pair_value / (2.0 * total)


cdef double _t_merge(uint64_t board) nogil:
    cdef int exps[16]
    cdef int pairs = 0
    cdef int r, c, e
    _extract(board, exps)
    for r in range(4):
        for c in range(4):
            e = exps[4 * r + c]
            if e == 0:
                continue
            if c < 3 and exps[4 * r + c + 1] == e:
                pairs += 1
            if r < 3 and exps[4 * r + c + 4] == e:
                pairs += 1
    return pairs / 24.0


cdef int _monotone_line(int* vals, int n, int nondecreasing_only) nogil:
    cdef int seq[4]
    cdef int m = 0
    cdef int i
    cdef int nondec = 1, noninc = 1
    for i in range(n):
        if vals[i]:
            seq[m] = vals[i]
            m += 1
    if m == 0:
        return 0
    for i in range(m - 1):
        if seq[i] > seq[i + 1]:
            nondec = 0
        if seq[i] < seq[i + 1]:
            noninc = 0
    if nondecreasing_only:
        return nondec
    return nondec or noninc


cdef double _t_monotonicity(uint64_t board) nogil:
    cdef int exps[16]
    cdef int line[4]
    cdef int i
    cdef double score = 0.0
    _extract(board, exps)
    for i in range(4):
        line[i] = exps[12 + i]
    if _monotone_line(line, 4, 0):
        score += 0.5
    for i in range(4):
        line[i] = exps[4 * i + 3]
    if _monotone_line(line, 4, 1):
        score += 0.5
    if score <= 1.0:
        return score
    return 1.0


cdef int SNAKE[16]
SNAKE[0] = 15; SNAKE[1] = 14; SNAKE[2] = 13; SNAKE[3] = 12
SNAKE[4] = 8;  SNAKE[5] = 9;  SNAKE[6] = 10; SNAKE[7] = 11
SNAKE[8] = 7;  SNAKE[9] = 6;  SNAKE[10] = 5; SNAKE[11] = 4
SNAKE[12] = 0; SNAKE[13] = 1; SNAKE[14] = 2; SNAKE[15] = 3

SNAKE_PATH = (15, 14, 13, 12, 8, 9, 10, 11, 7, 6, 5, 4, 0, 1, 2, 3)


cdef double _t_snake(uint64_t board) nogil:
    cdef int exps[16]
    cdef int score = 0
    cdef int i, a, b
    _extract(board, exps)
    for i in range(15):
        a = exps[SNAKE[i]]
        b = exps[SNAKE[i + 1]]
        if a and b and a >= b:
            score += 1
    return score / 15.0


cdef double _t_smoothness(uint64_t board) nogil:
    cdef int exps[16]
    cdef int r, c, e, d
    cdef double acc = 0.0
    _extract(board, exps)
    for r in range(4):
        for c in range(4):
            e = exps[4 * r + c]
            if e == 0:
                continue
            if c < 3 and exps[4 * r + c + 1]:
                d = e - exps[4 * r + c + 1]
                if d < 0:
                    d = -d
                acc += 1.0 / (1.0 + d)
            if r < 3 and exps[4 * r + c + 4]:
                d = e - exps[4 * r + c + 4]
                if d < 0:
                    d = -d
                acc += 1.0 / (1.0 + d)
    return acc / 24.0


cdef double _term(uint64_t board, int term_id) nogil:
    if term_id == 0:
        return _t_empty(board)
    elif term_id == 1:
        return _t_highest(board)
    elif term_id == 2:
        return _t_corner_bonus(board)
    elif term_id == 3:
        return _t_corner_proximity(board)
    elif term_id == 4:
        return _t_bottom_row(board)
    elif term_id == 5:
        return _t_merge_value(board)
    elif term_id == 6:
        return _t_merge(board)
    elif term_id == 7:
        return _t_monotonicity(board)
    elif term_id == 8:
        return _t_snake(board)
    else:
        return _t_smoothness(board)


def eval_term_id(board, int term_id):
    if term_id < 0 or term_id > 9:
        raise IndexError(f"term id {term_id} out of range")
    return _term(<uint64_t>board, term_id)


cdef double _eval_weighted_c(uint64_t board, int n, int* tids, double* ws) nogil:
    cdef double acc = 0.0
    cdef int i
    for i in range(n):
        acc += ws[i] * _term(board, tids[i])
    return acc


def eval_weighted(board, term_ids, weights):
    """Weighted sum of terms, accumulated in the given order."""
    cdef int tids[16]
    cdef double ws[16]
    cdef int n = len(term_ids)
    cdef int i
    if n > 16:
        raise ValueError("too many terms")
    for i in range(n):
        tids[i] = term_ids[i]
        ws[i] = weights[i]
    return _eval_weighted_c(<uint64_t>board, n, tids, ws)


# ---------------------------------------------------------------------------
# Playouts

cdef uint64_t _spawn_c(uint64_t board, Xo* rng) nogil:
    """Uniform empty cell, exponent 1 at 90% else 2 (cell drawn first)."""
    cdef int empties = _count_empty_c(board)
    cdef int target = <int>_xo_randbelow(rng, <uint64_t>empties)
    cdef int i, cell = 0
    cdef int exponent
    for i in range(16):
        if ((board >> (4 * i)) & 0xF) == 0:
            if target == 0:
                cell = i
                break
            target -= 1
    if _xo_random(rng) < TWO_PROB:
        exponent = 1
    else:
        exponent = 2
    return board | ((<uint64_t>exponent) << (4 * cell))


cdef int _rollout_choice_c(uint64_t board, int policy, Xo* rng,
                           uint64_t* out_board, int* out_score) nogil:
    """Pick a rollout move; returns 0 when no move exists."""
    cdef uint64_t boards[4]
    cdef int scores[4]
    cdef int n = 0
    cdef int d, pick, best
    cdef uint64_t nb
    cdef int sc
    for d in range(4):
        sc = _slide_c(board, d, &nb)
        if nb != board:
            boards[n] = nb
            scores[n] = sc
            n += 1
    if n == 0:
        return 0
    if policy == POLICY_GREEDY:
        best = 0
        for d in range(1, n):
            if scores[d] > scores[best]:
                best = d
        pick = best
    else:
        pick = <int>_xo_randbelow(rng, <uint64_t>n)
    out_board[0] = boards[pick]
    out_score[0] = scores[pick]
    return 1


cdef int64_t _playout_c(uint64_t board, int depth, int policy, uint64_t seed,
                        uint64_t* out_board) nogil:
    cdef Xo rng
    cdef int64_t gain = 0
    cdef int step, sc
    cdef uint64_t nb
    _xo_seed(&rng, seed)
    board = _spawn_c(board, &rng)
    for step in range(depth):
        if not _rollout_choice_c(board, policy, &rng, &nb, &sc):
            break
        board = nb
        gain += sc
        board = _spawn_c(board, &rng)
    out_board[0] = board
    return gain


def playout(board, int depth, int policy, seed):
    """Spawn into an afterstate, then roll out up to ``depth`` moves.

    Returns (final_board, score_gained), excluding the root slide score.
    """
    cdef uint64_t final
    cdef int64_t gain = _playout_c(
        <uint64_t>board, depth, policy, <uint64_t>seed, &final
    )
    return final, gain


def search_eval(board, int playouts, int depth, int policy, double lam,
                term_ids, weights, base_seed):
    """Evaluate every legal direction by averaged playouts.

    Returns [(dir, mean_value, mean_score_gain)] for legal dirs in
    direction order; mean_score_gain includes the root slide's score.
    """
    cdef uint64_t b = <uint64_t>board
    cdef uint64_t base = <uint64_t>base_seed
    cdef int tids[16]
    cdef double ws[16]
    cdef int nt = len(term_ids)
    cdef int i, d, root_score
    cdef uint64_t after, final, sub
    cdef int64_t g, total_g, gain
    cdef double total_v, leaf
    if nt > 16:
        raise ValueError("too many terms")
    for i in range(nt):
        tids[i] = term_ids[i]
        ws[i] = weights[i]
    out = []
    for d in range(4):
        root_score = _slide_c(b, d, &after)
        if after == b:
            continue
        total_v = 0.0
        total_g = 0
        with nogil:
            for i in range(playouts):
                sub = _derive2(base, <uint64_t>d, <uint64_t>i)
                gain = _playout_c(after, depth, policy, sub, &final)
                g = root_score + gain
                leaf = _eval_weighted_c(final, nt, tids, ws)
                total_v += lam * (g / (g + NORM)) + (1.0 - lam) * leaf
                total_g += g
        out.append((d, total_v / playouts, total_g / (<double>playouts)))
    return out
