"""Pure-Python twin of the compiled kernel (same signature, same results)."""

from __future__ import annotations

OK, NODE_CAP, WORD_OVERFLOW = 0, 1, 2


class _Overflow(Exception):
    pass


def _multiplier(kind: int, bits: int, max_letters: int):
    if kind == 0:
        return lambda x, s: tuple(a + b for a, b in zip(x, s))
    if kind == 1:
        return lambda x, s: (x[0] + s[0], x[1] + s[1], x[2] + s[2] + x[0] * s[1])
    mask = (1 << bits) - 1

    def mul(x, s):
        xl, xb = x
        sl, sb = s
        for j in range(sl):
            code = (sb >> (bits * j)) & mask
            if xl and ((xb >> (bits * (xl - 1))) & mask) == code ^ 1:
                xl -= 1
                xb &= ~(mask << (bits * xl))
                continue
            if xl >= max_letters:
                raise _Overflow
            xb |= code << (bits * xl)
            xl += 1
        return (xl, xb)

    return mul


def enumerate_counts(kind, steps, step_class, step_len, h_delta, coset_next, stride, base, base_coset,
                     budget, bits, max_letters, first_steps, count_root, node_cap, max_depth):
    steps = [tuple(int(v) for v in row) for row in steps]
    step_class = [int(v) for v in step_class]
    step_len = [int(v) for v in step_len]
    h_delta = [[int(v) for v in row] for row in h_delta]
    coset_next = [[int(v) for v in row] for row in coset_next]
    stride = [int(v) for v in stride]
    first_steps = [int(v) for v in first_steps]
    mul = _multiplier(kind, bits, max_letters)
    S = len(steps)
    counts: dict = {}
    maxdh: dict = {}
    if count_root:
        counts[2] = 1
        maxdh[0] = 0
    root = tuple(int(v) for v in base)
    visited = {root}
    nodes = 0
    # explicit stack of (vertex, height, coset, ell, key, lo, hi, next index)
    stack = [[root, 0, base_coset, 0, 0, 0, 0, 0]]
    try:
        while stack:
            frame = stack[-1]
            depth = len(stack) - 1
            order = first_steps if depth == 0 else range(S)
            i = frame[7]
            if i >= len(order) or depth == max_depth:
                stack.pop()
                if depth:
                    visited.discard(frame[0])
                continue
            frame[7] = i + 1
            s = order[i]
            nl = frame[3] + step_len[s]
            if nl >= budget:
                frame[7] = len(order)
                continue
            y = mul(frame[0], steps[s])
            if y in visited:
                continue
            nodes += 1
            if nodes > node_cap:
                return NODE_CAP, counts, maxdh, nodes
            visited.add(y)
            h = frame[1] + h_delta[frame[2]][s]
            if depth == 0:
                lo = hi = h
            else:
                lo, hi = min(frame[5], h), max(frame[6], h)
            key = frame[4] + stride[step_class[s]]
            cat = (2 if hi == h else 1) if lo > 0 else 0
            slot = key * 3 + cat
            counts[slot] = counts.get(slot, 0) + 1
            if maxdh.get(key, -1) < abs(h):
                maxdh[key] = abs(h)
            stack.append([y, h, coset_next[frame[2]][s], nl, key, lo, hi, 0])
    except _Overflow:
        return WORD_OVERFLOW, counts, maxdh, nodes
    return OK, counts, maxdh, nodes
