"""Chess rules: positions, legal move generation, and game termination.

Squares are integers 0..63 with a1 = 0, b1 = 1, ..., h8 = 63. Pieces are
signed integers (positive = white, negative = black). Positions and moves
are immutable values; game history lives in :class:`GameState`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

WHITE = 1
BLACK = -1

EMPTY = 0
PAWN, KNIGHT, BISHOP, ROOK, QUEEN, KING = 1, 2, 3, 4, 5, 6

PIECE_CHARS = {
    PAWN: "P", KNIGHT: "N", BISHOP: "B", ROOK: "R", QUEEN: "Q", KING: "K",
    -PAWN: "p", -KNIGHT: "n", -BISHOP: "b", -ROOK: "r", -QUEEN: "q", -KING: "k",
}
CHAR_PIECES = {c: p for p, c in PIECE_CHARS.items()}
PROMO_CHARS = {KNIGHT: "n", BISHOP: "b", ROOK: "r", QUEEN: "q"}
CHAR_PROMOS = {c: p for p, c in PROMO_CHARS.items()}

FILE_NAMES = "abcdefgh"
RANK_NAMES = "12345678"

# Castling right bits.
W_KINGSIDE = 1
W_QUEENSIDE = 2
B_KINGSIDE = 4
B_QUEENSIDE = 8
ALL_CASTLING = 15


class IllegalMoveError(ValueError):
    """Raised when a move is applied to a position where it is not legal."""


def square(file: int, rank: int) -> int:
    return rank * 8 + file


def square_file(sq: int) -> int:
    return sq & 7


def square_rank(sq: int) -> int:
    return sq >> 3


def square_name(sq: int) -> str:
    return FILE_NAMES[sq & 7] + RANK_NAMES[sq >> 3]


def parse_square(name: str) -> int:
    if len(name) != 2 or name[0] not in FILE_NAMES or name[1] not in RANK_NAMES:
        raise ValueError(f"bad square name: {name!r}")
    return square(FILE_NAMES.index(name[0]), RANK_NAMES.index(name[1]))


class Move(NamedTuple):
    """A move in from/to/promotion form. Promotion is a piece type or None."""

    from_sq: int
    to_sq: int
    promotion: Optional[int] = None

    def uci(self) -> str:
        s = square_name(self.from_sq) + square_name(self.to_sq)
        if self.promotion is not None:
            s += PROMO_CHARS[self.promotion]
        return s

    @staticmethod
    def from_uci(text: str) -> "Move":
        if len(text) not in (4, 5):
            raise ValueError(f"bad UCI move: {text!r}")
        frm = parse_square(text[0:2])
        to = parse_square(text[2:4])
        promo = None
        if len(text) == 5:
            if text[4] not in CHAR_PROMOS:
                raise ValueError(f"bad promotion piece in {text!r}")
            promo = CHAR_PROMOS[text[4]]
        return Move(frm, to, promo)

    def __str__(self) -> str:
        return self.uci()


def _build_step_table(offsets: list[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    table = []
    for sq in range(64):
        f, r = sq & 7, sq >> 3
        targets = []
        for df, dr in offsets:
            nf, nr = f + df, r + dr
            if 0 <= nf < 8 and 0 <= nr < 8:
                targets.append(nr * 8 + nf)
        table.append(tuple(targets))
    return tuple(table)


def _build_ray_table(dirs: list[tuple[int, int]]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    table = []
    for sq in range(64):
        f, r = sq & 7, sq >> 3
        rays = []
        for df, dr in dirs:
            ray = []
            nf, nr = f + df, r + dr
            while 0 <= nf < 8 and 0 <= nr < 8:
                ray.append(nr * 8 + nf)
                nf += df
                nr += dr
            rays.append(tuple(ray))
        table.append(tuple(rays))
    return tuple(table)


KNIGHT_TARGETS = _build_step_table(
    [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)]
)
KING_TARGETS = _build_step_table(
    [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
)
ROOK_RAYS = _build_ray_table([(1, 0), (-1, 0), (0, 1), (0, -1)])
BISHOP_RAYS = _build_ray_table([(1, 1), (1, -1), (-1, 1), (-1, -1)])

# Castling rights cleared when a move touches these squares.
_RIGHTS_CLEARED = [0] * 64
_RIGHTS_CLEARED[parse_square("e1")] = W_KINGSIDE | W_QUEENSIDE
_RIGHTS_CLEARED[parse_square("a1")] = W_QUEENSIDE
_RIGHTS_CLEARED[parse_square("h1")] = W_KINGSIDE
_RIGHTS_CLEARED[parse_square("e8")] = B_KINGSIDE | B_QUEENSIDE
_RIGHTS_CLEARED[parse_square("a8")] = B_QUEENSIDE
_RIGHTS_CLEARED[parse_square("h8")] = B_KINGSIDE

_STARTING_BOARD = (
    (ROOK, KNIGHT, BISHOP, QUEEN, KING, BISHOP, KNIGHT, ROOK)
    + (PAWN,) * 8
    + (EMPTY,) * 32
    + (-PAWN,) * 8
    + (-ROOK, -KNIGHT, -BISHOP, -QUEEN, -KING, -BISHOP, -KNIGHT, -ROOK)
)


@dataclass(frozen=True, slots=True)
class Position:
    """Full chess state. Immutable; apply_move returns a new Position."""

    board: tuple[int, ...] = _STARTING_BOARD
    side_to_move: int = WHITE
    castling: int = ALL_CASTLING
    en_passant: Optional[int] = None
    halfmove_clock: int = 0
    fullmove_number: int = 1

    def piece_at(self, sq: int) -> int:
        return self.board[sq]

    def king_square(self, side: int) -> int:
        return self.board.index(KING * side)

    def repetition_key(self) -> tuple:
        """Identity used for threefold counting: placement, side, castling, ep."""
        return (self.board, self.side_to_move, self.castling, self.en_passant)


STARTING_POSITION = Position()


def _is_attacked(board: tuple[int, ...], sq: int, by_side: int, ignore_sq: int = -1) -> bool:
    """True if `by_side` attacks `sq`. `ignore_sq` is treated as empty (x-ray)."""
    # Pawns: a white pawn on sq-7/sq-9 attacks sq (mirrored for black).
    f = sq & 7
    if by_side == WHITE:
        if sq >= 8:
            if f > 0 and board[sq - 9] == PAWN:
                return True
            if f < 7 and board[sq - 7] == PAWN:
                return True
    else:
        if sq < 56:
            if f > 0 and board[sq + 7] == -PAWN:
                return True
            if f < 7 and board[sq + 9] == -PAWN:
                return True
    knight = KNIGHT * by_side
    for t in KNIGHT_TARGETS[sq]:
        if board[t] == knight:
            return True
    king = KING * by_side
    for t in KING_TARGETS[sq]:
        if board[t] == king:
            return True
    rook, queen = ROOK * by_side, QUEEN * by_side
    for ray in ROOK_RAYS[sq]:
        for t in ray:
            p = board[t]
            if p == EMPTY or t == ignore_sq:
                continue
            if p == rook or p == queen:
                return True
            break
    bishop = BISHOP * by_side
    for ray in BISHOP_RAYS[sq]:
        for t in ray:
            p = board[t]
            if p == EMPTY or t == ignore_sq:
                continue
            if p == bishop or p == queen:
                return True
            break
    return False


def _attackers_of(board: tuple[int, ...], sq: int, by_side: int) -> list[int]:
    """All squares of `by_side` pieces attacking `sq`."""
    out = []
    f = sq & 7
    if by_side == WHITE:
        if sq >= 8:
            if f > 0 and board[sq - 9] == PAWN:
                out.append(sq - 9)
            if f < 7 and board[sq - 7] == PAWN:
                out.append(sq - 7)
    else:
        if sq < 56:
            if f > 0 and board[sq + 7] == -PAWN:
                out.append(sq + 7)
            if f < 7 and board[sq + 9] == -PAWN:
                out.append(sq + 9)
    knight = KNIGHT * by_side
    for t in KNIGHT_TARGETS[sq]:
        if board[t] == knight:
            out.append(t)
    king = KING * by_side
    for t in KING_TARGETS[sq]:
        if board[t] == king:
            out.append(t)
    rook, queen = ROOK * by_side, QUEEN * by_side
    for ray in ROOK_RAYS[sq]:
        for t in ray:
            p = board[t]
            if p == EMPTY:
                continue
            if p == rook or p == queen:
                out.append(t)
            break
    bishop = BISHOP * by_side
    for ray in BISHOP_RAYS[sq]:
        for t in ray:
            p = board[t]
            if p == EMPTY:
                continue
            if p == bishop or p == queen:
                out.append(t)
            break
    return out


def is_in_check(p: Position, side: Optional[int] = None) -> bool:
    side = p.side_to_move if side is None else side
    return _is_attacked(p.board, p.king_square(side), -side)


def _pinned_map(board: tuple[int, ...], king_sq: int, side: int) -> dict[int, frozenset[int]]:
    """Map from pinned own-piece square to the set of squares it may move to."""
    pinned: dict[int, frozenset[int]] = {}
    enemy_rook, enemy_bishop, enemy_queen = -ROOK * side, -BISHOP * side, -QUEEN * side
    for rays, slider in ((ROOK_RAYS, enemy_rook), (BISHOP_RAYS, enemy_bishop)):
        for ray in rays[king_sq]:
            own_sq = -1
            for t in ray:
                piece = board[t]
                if piece == EMPTY:
                    continue
                if own_sq < 0:
                    if piece * side > 0:
                        own_sq = t
                    else:
                        break
                else:
                    if piece == slider or piece == enemy_queen:
                        allowed = [s for s in ray if s != own_sq]
                        # Ray squares up to and including the pinning slider.
                        cut = allowed.index(t)
                        pinned[own_sq] = frozenset(allowed[: cut + 1])
                    break
    return pinned


def _between_mask(king_sq: int, checker_sq: int, board: tuple[int, ...]) -> frozenset[int]:
    """Squares a non-king move may target to resolve a single check."""
    piece = abs(board[checker_sq])
    if piece in (KNIGHT, PAWN):
        return frozenset((checker_sq,))
    for rays in (ROOK_RAYS, BISHOP_RAYS):
        for ray in rays[king_sq]:
            if checker_sq in ray:
                squares = []
                for t in ray:
                    squares.append(t)
                    if t == checker_sq:
                        return frozenset(squares)
    raise AssertionError("checker not on a ray from the king")


def _ep_capture_is_legal(p: Position, move: Move) -> bool:
    """Play the en passant capture on a scratch board and test king safety."""
    board = list(p.board)
    side = p.side_to_move
    captured_sq = move.to_sq - 8 * side
    board[move.from_sq] = EMPTY
    board[captured_sq] = EMPTY
    board[move.to_sq] = PAWN * side
    king_sq = move.to_sq if abs(p.board[move.from_sq]) == KING else board.index(KING * side)
    return not _is_attacked(tuple(board), king_sq, -side)


def _generate_legal(p: Position) -> list[Move]:
    board = p.board
    side = p.side_to_move
    king_sq = board.index(KING * side)
    checkers = _attackers_of(board, king_sq, -side)
    moves: list[Move] = []

    # King steps are always candidates; test target safety with the king lifted.
    for t in KING_TARGETS[king_sq]:
        if board[t] * side > 0:
            continue
        if not _is_attacked(board, t, -side, ignore_sq=king_sq):
            moves.append(Move(king_sq, t))

    if len(checkers) >= 2:
        return moves

    check_mask: Optional[frozenset[int]] = None
    if checkers:
        check_mask = _between_mask(king_sq, checkers[0], board)
    pinned = _pinned_map(board, king_sq, side)

    def allowed(from_sq: int, to_sq: int) -> bool:
        if check_mask is not None and to_sq not in check_mask:
            return False
        pin = pinned.get(from_sq)
        return pin is None or to_sq in pin

    push = 8 * side
    start_rank = 1 if side == WHITE else 6
    promo_rank = 6 if side == WHITE else 1
    pawn, knight = PAWN * side, KNIGHT * side

    for sq in range(64):
        piece = board[sq]
        if piece == EMPTY or piece * side <= 0 or piece == KING * side:
            continue
        kind = piece * side
        if kind == PAWN:
            f, r = sq & 7, sq >> 3
            t = sq + push
            if board[t] == EMPTY:
                if allowed(sq, t):
                    if r == promo_rank:
                        moves.extend(Move(sq, t, pc) for pc in (QUEEN, ROOK, BISHOP, KNIGHT))
                    else:
                        moves.append(Move(sq, t))
                if r == start_rank and board[t + push] == EMPTY and allowed(sq, t + push):
                    moves.append(Move(sq, t + push))
            for df in (-1, 1):
                if not (0 <= f + df < 8):
                    continue
                t = sq + push + df
                if board[t] * side < 0 and allowed(sq, t):
                    if r == promo_rank:
                        moves.extend(Move(sq, t, pc) for pc in (QUEEN, ROOK, BISHOP, KNIGHT))
                    else:
                        moves.append(Move(sq, t))
                if t == p.en_passant:
                    m = Move(sq, t)
                    if _ep_capture_is_legal(p, m):
                        moves.append(m)
        elif kind == KNIGHT:
            for t in KNIGHT_TARGETS[sq]:
                if board[t] * side <= 0 and allowed(sq, t):
                    moves.append(Move(sq, t))
        else:
            if kind == ROOK:
                ray_sets = (ROOK_RAYS[sq],)
            elif kind == BISHOP:
                ray_sets = (BISHOP_RAYS[sq],)
            else:
                ray_sets = (ROOK_RAYS[sq], BISHOP_RAYS[sq])
            for rays in ray_sets:
                for ray in rays:
                    for t in ray:
                        occupant = board[t]
                        if occupant * side > 0:
                            break
                        if allowed(sq, t):
                            moves.append(Move(sq, t))
                        if occupant != EMPTY:
                            break

    if not checkers:
        if side == WHITE:
            if (
                p.castling & W_KINGSIDE
                and board[5] == EMPTY
                and board[6] == EMPTY
                and not _is_attacked(board, 5, BLACK)
                and not _is_attacked(board, 6, BLACK)
            ):
                moves.append(Move(4, 6))
            if (
                p.castling & W_QUEENSIDE
                and board[3] == EMPTY
                and board[2] == EMPTY
                and board[1] == EMPTY
                and not _is_attacked(board, 3, BLACK)
                and not _is_attacked(board, 2, BLACK)
            ):
                moves.append(Move(4, 2))
        else:
            if (
                p.castling & B_KINGSIDE
                and board[61] == EMPTY
                and board[62] == EMPTY
                and not _is_attacked(board, 61, WHITE)
                and not _is_attacked(board, 62, WHITE)
            ):
                moves.append(Move(60, 62))
            if (
                p.castling & B_QUEENSIDE
                and board[59] == EMPTY
                and board[58] == EMPTY
                and board[57] == EMPTY
                and not _is_attacked(board, 59, WHITE)
                and not _is_attacked(board, 58, WHITE)
            ):
                moves.append(Move(60, 58))
    return moves


def legal_moves(p: Position) -> list[Move]:
    """All legal moves, sorted by UCI string for reproducible tie-breaking."""
    return sorted(_generate_legal(p), key=Move.uci)


def apply_move_unchecked(p: Position, m: Move) -> Position:
    """Apply a move assumed legal. Use apply_move unless the caller just
    generated the move from this position."""
    board = list(p.board)
    side = p.side_to_move
    piece = board[m.from_sq]
    captured = board[m.to_sq]
    kind = piece * side

    board[m.from_sq] = EMPTY
    board[m.to_sq] = piece if m.promotion is None else m.promotion * side

    ep_target: Optional[int] = None
    if kind == PAWN:
        if m.to_sq == p.en_passant and captured == EMPTY and (m.to_sq & 7) != (m.from_sq & 7):
            board[m.to_sq - 8 * side] = EMPTY
            captured = PAWN  # any nonzero: resets the halfmove clock
        elif abs(m.to_sq - m.from_sq) == 16:
            ep_target = (m.from_sq + m.to_sq) // 2
    elif kind == KING and abs(m.to_sq - m.from_sq) == 2:
        # Castling: also move the rook.
        if m.to_sq > m.from_sq:
            rook_from, rook_to = m.from_sq + 3, m.from_sq + 1
        else:
            rook_from, rook_to = m.from_sq - 4, m.from_sq - 1
        board[rook_to] = board[rook_from]
        board[rook_from] = EMPTY

    castling = p.castling & ~(_RIGHTS_CLEARED[m.from_sq] | _RIGHTS_CLEARED[m.to_sq])
    halfmove = 0 if (kind == PAWN or captured != EMPTY) else p.halfmove_clock + 1
    fullmove = p.fullmove_number + (1 if side == BLACK else 0)
    return Position(tuple(board), -side, castling, ep_target, halfmove, fullmove)


def apply_move(p: Position, m: Move) -> Position:
    """Apply a legal move, returning the successor position."""
    if m not in _generate_legal(p):
        raise IllegalMoveError(f"{m.uci()} is not legal in this position")
    return apply_move_unchecked(p, m)


def perft(p: Position, depth: int) -> int:
    """Count leaf nodes of the legal move tree at exactly `depth` plies."""
    if depth < 0:
        raise ValueError("perft depth must be >= 0")
    if depth == 0:
        return 1
    if depth == 1:
        return len(_generate_legal(p))
    total = 0
    for m in _generate_legal(p):
        total += perft(apply_move_unchecked(p, m), depth - 1)
    return total


class OutcomeReason(enum.Enum):
    CHECKMATE = "checkmate"
    STALEMATE = "stalemate"
    THREEFOLD = "threefold"
    FIFTY_MOVE = "fifty_move"
    INSUFFICIENT_MATERIAL = "insufficient_material"
    ADJUDICATED = "adjudicated"
    ILLEGAL_MOVE = "illegal_move"


@dataclass(frozen=True, slots=True)
class Outcome:
    """Terminal game result: winner is WHITE, BLACK, or None for a draw."""

    winner: Optional[int]
    reason: OutcomeReason

    def result_string(self) -> str:
        if self.winner == WHITE:
            return "1-0"
        if self.winner == BLACK:
            return "0-1"
        return "1/2-1/2"


def _insufficient_material(board: tuple[int, ...]) -> bool:
    # Draw subset: K vs K, K+B vs K, K+N vs K.
    minors = 0
    for piece in board:
        if piece == EMPTY or abs(piece) == KING:
            continue
        if abs(piece) in (BISHOP, KNIGHT):
            minors += 1
            if minors > 1:
                return False
        else:
            return False
    return True


@dataclass
class GameState:
    """A position plus the history needed for threefold bookkeeping."""

    position: Position = field(default_factory=Position)
    repetitions: dict[tuple, int] = field(default_factory=dict)
    moves: list[Move] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.repetitions:
            self.repetitions[self.position.repetition_key()] = 1

    @staticmethod
    def from_position(p: Position) -> "GameState":
        return GameState(position=p)

    def push(self, m: Move) -> None:
        self.position = apply_move(self.position, m)
        key = self.position.repetition_key()
        self.repetitions[key] = self.repetitions.get(key, 0) + 1
        self.moves.append(m)

    def push_unchecked(self, m: Move) -> None:
        self.position = apply_move_unchecked(self.position, m)
        key = self.position.repetition_key()
        self.repetitions[key] = self.repetitions.get(key, 0) + 1
        self.moves.append(m)

    def copy(self) -> "GameState":
        return GameState(self.position, dict(self.repetitions), list(self.moves))


def would_cause_threefold(g: GameState, m: Move) -> bool:
    """True if playing `m` makes the resulting position's key occur 3+ times."""
    key = apply_move_unchecked(g.position, m).repetition_key()
    return g.repetitions.get(key, 0) + 1 >= 3


def game_outcome(g: GameState) -> Optional[Outcome]:
    """The game's result if it is over, else None.

    Fifty-move and threefold draws are auto-adjudicated (self-play has no
    claiming player); insufficient material covers K vs K, K+B vs K, K+N vs K.
    """
    p = g.position
    if not _generate_legal(p):
        if is_in_check(p):
            return Outcome(-p.side_to_move, OutcomeReason.CHECKMATE)
        return Outcome(None, OutcomeReason.STALEMATE)
    if p.halfmove_clock >= 100:
        return Outcome(None, OutcomeReason.FIFTY_MOVE)
    if g.repetitions.get(p.repetition_key(), 0) >= 3:
        return Outcome(None, OutcomeReason.THREEFOLD)
    if _insufficient_material(p.board):
        return Outcome(None, OutcomeReason.INSUFFICIENT_MATERIAL)
    return None


def random_playout_positions(seed: int, games: int, max_plies: int = 60) -> Iterator[Position]:
    """Positions visited by seeded random play; handy for property tests."""
    import random as _random

    rng = _random.Random(seed)
    for _ in range(games):
        g = GameState()
        for _ply in range(max_plies):
            moves = legal_moves(g.position)
            if not moves or game_outcome(g) is not None:
                break
            g.push_unchecked(rng.choice(moves))
            yield g.position
