"""Independent brute-force oracles used to cross-check the production code.

Everything here favors obviousness over speed and deliberately avoids the
implementation strategies used in the package (pin-aware generation, closed
forms, library calls), so agreement is meaningful.
"""

from __future__ import annotations

import math

from distillchess.core import (
    BISHOP,
    BISHOP_RAYS,
    BLACK,
    EMPTY,
    KING,
    KING_TARGETS,
    KNIGHT,
    KNIGHT_TARGETS,
    Move,
    PAWN,
    Position,
    QUEEN,
    ROOK,
    ROOK_RAYS,
    WHITE,
)


def naive_attacked(board: list[int], sq: int, by_side: int) -> bool:
    f, r = sq & 7, sq >> 3
    # Walk every square and ask if the piece there attacks sq.
    for src in range(64):
        piece = board[src]
        if piece == EMPTY or piece * by_side <= 0:
            continue
        kind = piece * by_side
        sf, sr = src & 7, src >> 3
        df, dr = f - sf, r - sr
        if kind == PAWN:
            if dr == by_side and abs(df) == 1:
                return True
        elif kind == KNIGHT:
            if (abs(df), abs(dr)) in ((1, 2), (2, 1)):
                return True
        elif kind == KING:
            if max(abs(df), abs(dr)) == 1:
                return True
        else:
            diag = abs(df) == abs(dr) != 0
            ortho = (df == 0) != (dr == 0)
            if kind == BISHOP and not diag:
                continue
            if kind == ROOK and not ortho:
                continue
            if kind == QUEEN and not (diag or ortho):
                continue
            step_f = (df > 0) - (df < 0)
            step_r = (dr > 0) - (dr < 0)
            cf, cr = sf + step_f, sr + step_r
            blocked = False
            while (cf, cr) != (f, r):
                if board[cr * 8 + cf] != EMPTY:
                    blocked = True
                    break
                cf += step_f
                cr += step_r
            if not blocked:
                return True
    return False


def naive_apply(p: Position, m: Move) -> Position:
    board = list(p.board)
    side = p.side_to_move
    piece = board[m.from_sq]
    target = board[m.to_sq]
    is_pawn = abs(piece) == PAWN
    is_capture = target != EMPTY

    board[m.to_sq] = piece
    board[m.from_sq] = EMPTY
    if m.promotion is not None:
        board[m.to_sq] = m.promotion * side
    if is_pawn and m.to_sq == p.en_passant and target == EMPTY and (m.from_sq & 7) != (m.to_sq & 7):
        board[m.to_sq - 8 * side] = EMPTY
        is_capture = True
    if abs(piece) == KING and abs(m.to_sq - m.from_sq) == 2:
        if m.to_sq > m.from_sq:
            board[m.from_sq + 1] = board[m.from_sq + 3]
            board[m.from_sq + 3] = EMPTY
        else:
            board[m.from_sq - 1] = board[m.from_sq - 4]
            board[m.from_sq - 4] = EMPTY

    castling = p.castling
    for sq, bits in ((4, 3), (0, 2), (7, 1), (60, 12), (56, 8), (63, 4)):
        if m.from_sq == sq or m.to_sq == sq:
            castling &= ~bits
    ep = None
    if is_pawn and abs(m.to_sq - m.from_sq) == 16:
        ep = (m.from_sq + m.to_sq) // 2
    half = 0 if (is_pawn or is_capture) else p.halfmove_clock + 1
    full = p.fullmove_number + (1 if side == BLACK else 0)
    return Position(tuple(board), -side, castling, ep, half, full)


def naive_legal_moves(p: Position) -> list[Move]:
    """Pseudo-legal generation plus make-and-test filtering."""
    board = list(p.board)
    side = p.side_to_move
    pseudo: list[Move] = []
    for sq in range(64):
        piece = board[sq]
        if piece == EMPTY or piece * side <= 0:
            continue
        kind = piece * side
        f, r = sq & 7, sq >> 3
        if kind == PAWN:
            fwd = sq + 8 * side
            last = 7 if side == WHITE else 0
            if 0 <= fwd < 64 and board[fwd] == EMPTY:
                if fwd >> 3 == last:
                    pseudo += [Move(sq, fwd, pc) for pc in (QUEEN, ROOK, BISHOP, KNIGHT)]
                else:
                    pseudo.append(Move(sq, fwd))
                start = 1 if side == WHITE else 6
                if r == start and board[fwd + 8 * side] == EMPTY:
                    pseudo.append(Move(sq, fwd + 8 * side))
            for df in (-1, 1):
                if 0 <= f + df < 8:
                    t = sq + 8 * side + df
                    if 0 <= t < 64:
                        if board[t] * side < 0:
                            if t >> 3 == last:
                                pseudo += [Move(sq, t, pc) for pc in (QUEEN, ROOK, BISHOP, KNIGHT)]
                            else:
                                pseudo.append(Move(sq, t))
                        elif t == p.en_passant:
                            pseudo.append(Move(sq, t))
        elif kind == KNIGHT:
            pseudo += [Move(sq, t) for t in KNIGHT_TARGETS[sq] if board[t] * side <= 0]
        elif kind == KING:
            pseudo += [Move(sq, t) for t in KING_TARGETS[sq] if board[t] * side <= 0]
        else:
            tables = {ROOK: (ROOK_RAYS,), BISHOP: (BISHOP_RAYS,), QUEEN: (ROOK_RAYS, BISHOP_RAYS)}
            for table in tables[kind]:
                for ray in table[sq]:
                    for t in ray:
                        if board[t] * side > 0:
                            break
                        pseudo.append(Move(sq, t))
                        if board[t] != EMPTY:
                            break

    # Castling, with explicit empty/attack rules.
    home = 4 if side == WHITE else 60
    if board[home] == KING * side and not naive_attacked(board, home, -side):
        k_bit = 1 if side == WHITE else 4
        q_bit = 2 if side == WHITE else 8
        if (
            p.castling & k_bit
            and board[home + 1] == EMPTY
            and board[home + 2] == EMPTY
            and board[home + 3] == ROOK * side
            and not naive_attacked(board, home + 1, -side)
            and not naive_attacked(board, home + 2, -side)
        ):
            pseudo.append(Move(home, home + 2))
        if (
            p.castling & q_bit
            and board[home - 1] == EMPTY
            and board[home - 2] == EMPTY
            and board[home - 3] == EMPTY
            and board[home - 4] == ROOK * side
            and not naive_attacked(board, home - 1, -side)
            and not naive_attacked(board, home - 2, -side)
        ):
            pseudo.append(Move(home, home - 2))

    legal = []
    for m in pseudo:
        after = naive_apply(p, m)
        king_sq = after.board.index(KING * side)
        if not naive_attacked(list(after.board), king_sq, -side):
            legal.append(m)
    return sorted(legal, key=Move.uci)


def naive_perft(p: Position, depth: int) -> int:
    if depth == 0:
        return 1
    total = 0
    for m in naive_legal_moves(p):
        total += naive_perft(naive_apply(p, m), depth - 1)
    return total


def kendall_tau_bruteforce(xs: list[float], ys: list[float]) -> float:
    """Tie-adjusted tau-b by direct O(n^2) pair counting."""
    n = len(xs)
    concordant = discordant = ties_x = ties_y = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = xs[i] - xs[j]
            dy = ys[i] - ys[j]
            if dx == 0 and dy == 0:
                continue
            if dx == 0:
                ties_x += 1
            elif dy == 0:
                ties_y += 1
            elif (dx > 0) == (dy > 0):
                concordant += 1
            else:
                discordant += 1
    denom = math.sqrt(
        (concordant + discordant + ties_x) * (concordant + discordant + ties_y)
    )
    if denom == 0:
        raise ZeroDivisionError("tau undefined: one ranking is fully tied")
    return (concordant - discordant) / denom


def gauss_bin_mass_quadrature(mu: float, sigma: float, lo: float, hi: float, step: float = 1e-4) -> float:
    """Trapezoid integral of the normal density over [lo, hi]."""
    n = max(2, int(round((hi - lo) / step)) + 1)
    total = 0.0
    prev = None
    for i in range(n):
        x = lo + (hi - lo) * i / (n - 1)
        y = math.exp(-0.5 * ((x - mu) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))
        if prev is not None:
            total += 0.5 * (prev + y) * (hi - lo) / (n - 1)
        prev = y
    return total
