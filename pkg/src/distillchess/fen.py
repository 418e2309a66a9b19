"""FEN parsing and serialization (standard 6-field form)."""

from __future__ import annotations

from .core import (
    ALL_CASTLING,
    B_KINGSIDE,
    B_QUEENSIDE,
    BLACK,
    CHAR_PIECES,
    EMPTY,
    KING,
    PIECE_CHARS,
    Position,
    W_KINGSIDE,
    W_QUEENSIDE,
    WHITE,
    parse_square,
    square_name,
)

STARTING_FEN = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"

_CASTLING_BITS = {"K": W_KINGSIDE, "Q": W_QUEENSIDE, "k": B_KINGSIDE, "q": B_QUEENSIDE}


class FenError(ValueError):
    """Raised for malformed FEN text; the message names the offending field."""


def parse_fen(text: str) -> Position:
    fields = text.strip().split()
    if len(fields) != 6:
        raise FenError(f"expected 6 fields, got {len(fields)}")
    placement, side, castling, ep, halfmove, fullmove = fields

    ranks = placement.split("/")
    if len(ranks) != 8:
        raise FenError(f"placement: expected 8 ranks, got {len(ranks)}")
    board = [EMPTY] * 64
    kings = {WHITE: 0, BLACK: 0}
    for rank_idx, row in enumerate(ranks):
        rank = 7 - rank_idx
        file = 0
        for ch in row:
            if ch.isdigit():
                file += int(ch)
            elif ch in CHAR_PIECES:
                if file > 7:
                    raise FenError(f"placement: rank {rank + 1} has more than 8 files")
                piece = CHAR_PIECES[ch]
                board[rank * 8 + file] = piece
                if abs(piece) == KING:
                    kings[WHITE if piece > 0 else BLACK] += 1
                file += 1
            else:
                raise FenError(f"placement: bad character {ch!r}")
        if file != 8:
            raise FenError(f"placement: rank {rank + 1} covers {file} files, expected 8")
    if kings[WHITE] != 1 or kings[BLACK] != 1:
        raise FenError("placement: each side must have exactly one king")

    if side == "w":
        stm = WHITE
    elif side == "b":
        stm = BLACK
    else:
        raise FenError(f"side to move: expected 'w' or 'b', got {side!r}")

    rights = 0
    if castling != "-":
        for ch in castling:
            bit = _CASTLING_BITS.get(ch)
            if bit is None or rights & bit:
                raise FenError(f"castling: bad field {castling!r}")
            rights |= bit
    if rights & ~ALL_CASTLING:
        raise FenError(f"castling: bad field {castling!r}")

    ep_square = None
    if ep != "-":
        try:
            ep_square = parse_square(ep)
        except ValueError as exc:
            raise FenError(f"en passant: {exc}") from exc
        if (ep_square >> 3) not in (2, 5):
            raise FenError(f"en passant: target {ep} not on rank 3 or 6")

    try:
        half = int(halfmove)
        full = int(fullmove)
    except ValueError as exc:
        raise FenError(f"cllocks: {exc}") from exc
    if half < 0:
        raise FenError("halfmove clock: must be >= 0")
    if full < 1:
        raise FenError("fullmove number: must be >= 1")

    return Position(tuple(board), stm, rights, ep_square, half, full)


def to_fen(p: Position) -> str:
    rows = []
    for rank in range(7, -1, -1):
        row = []
        empty = 0
        for file in range(8):
            piece = p.board[rank * 8 + file]
            if piece == EMPTY:
                empty += 1
            else:
                if empty:
                    row.append(str(empty))
                    empty = 0
                row.append(PIECE_CHARS[piece])
        if empty:
            row.append(str(empty))
        rows.append("".join(row))
    placement = "/".join(rows)
    side = "w" if p.side_to_move == WHITE else "b"
    castling = "".join(ch for ch, bit in _CASTLING_BITS.items() if p.castling & bit) or "-"
    ep = square_name(p.en_passant) if p.en_passant is not None else "-"
    return f"{placement} {side} {castling} {ep} {p.halfmove_clock} {p.fullmove_number}"
