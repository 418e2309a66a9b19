"""PGN reading and writing, including the SAN move notation it uses.

Reading tolerates comments, NAGs, and nested variations by skipping them;
only mainline moves are replayed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, TextIO

from .core import (
    BISHOP,
    KING,
    KNIGHT,
    Move,
    PAWN,
    Position,
    QUEEN,
    ROOK,
    apply_move_unchecked,
    game_outcome,
    is_in_check,
    legal_moves,
    square_file,
    square_name,
    square_rank,
)
from .fen import STARTING_FEN, parse_fen, to_fen

RESULTS = ("1-0", "0-1", "1/2-1/2", "*")

_PIECE_LETTERS = {"N": KNIGHT, "B": BISHOP, "R": ROOK, "Q": QUEEN, "K": KING}
_LETTER_OF = {v: k for k, v in _PIECE_LETTERS.items()}

_SAN_RE = re.compile(
    r"^(?P<piece>[KQRBN])?(?P<from_file>[a-h])?(?P<from_rank>[1-8])?"
    r"(?P<capture>x)?(?P<target>[a-h][1-8])(?:=(?P<promo>[QRBN]))?$"
)


class PgnError(ValueError):
    pass


@dataclass
class PgnGame:
    headers: dict[str, str] = field(default_factory=dict)
    moves: list[Move] = field(default_factory=list)
    result: str = "*"

    @property
    def starting_position(self) -> Position:
        fen = self.headers.get("FEN")
        return parse_fen(fen) if fen else Position()

    def positions(self) -> Iterator[Position]:
        """The starting position and every position after a mainline move."""
        p = self.starting_position
        yield p
        for m in self.moves:
            p = apply_move_unchecked(p, m)
            yield p


def parse_san(p: Position, san: str) -> Move:
    """Resolve a SAN string against the legal moves of `p`."""
    text = san.rstrip("+#!?").replace("e.p.", "")
    if text in ("O-O", "0-0"):
        candidates = [m for m in legal_moves(p) if abs(p.board[m.from_sq]) == KING and m.to_sq - m.from_sq == 2]
    elif text in ("O-O-O", "0-0-0"):
        candidates = [m for m in legal_moves(p) if abs(p.board[m.from_sq]) == KING and m.from_sq - m.to_sq == 2]
    else:
        match = _SAN_RE.match(text)
        if not match:
            raise PgnError(f"unparseable SAN move {san!r}")
        piece = _PIECE_LETTERS.get(match.group("piece") or "", PAWN)
        target = match.group("target")
        from_file = match.group("from_file")
        from_rank = match.group("from_rank")
        promo = _PIECE_LETTERS[match.group("promo")] if match.group("promo") else None
        target_sq = (int(target[1]) - 1) * 8 + "abcdefgh".index(target[0])
        candidates = []
        for m in legal_moves(p):
            if m.to_sq != target_sq or m.promotion != promo:
                continue
            if abs(p.board[m.from_sq]) != piece:
                continue
            if from_file and square_file(m.from_sq) != "abcdefgh".index(from_file):
                continue
            if from_rank and square_rank(m.from_sq) != int(from_rank) - 1:
                continue
            candidates.append(m)
    if len(candidates) != 1:
        raise PgnError(f"SAN move {san!r} matches {len(candidates)} legal moves")
    return candidates[0]


def to_san(p: Position, m: Move) -> str:
    """SAN for a legal move of `p`."""
    piece = abs(p.board[m.from_sq])
    if piece == KING and abs(m.to_sq - m.from_sq) == 2:
        san = "O-O" if m.to_sq > m.from_sq else "O-O-O"
    else:
        capture = p.board[m.to_sq] != 0 or (piece == PAWN and m.to_sq == p.en_passant)
        if piece == PAWN:
            san = ""
            if capture:
                san += "abcdefgh"[square_file(m.from_sq)] + "x"
            san += square_name(m.to_sq)
            if m.promotion is not None:
                san += "=" + _LETTER_OF[m.promotion]
        else:
            others = [
                o
                for o in legal_moves(p)
                if o.to_sq == m.to_sq
                and o.from_sq != m.from_sq
                and abs(p.board[o.from_sq]) == piece
            ]
            disambig = ""
            if others:
                same_file = any(square_file(o.from_sq) == square_file(m.from_sq) for o in others)
                same_rank = any(square_rank(o.from_sq) == square_rank(m.from_sq) for o in others)
                if not same_file:
                    disambig = "abcdefgh"[square_file(m.from_sq)]
                elif not same_rank:
                    disambig = "12345678"[square_rank(m.from_sq)]
                else:
                    disambig = square_name(m.from_sq)
            san = _LETTER_OF[piece] + disambig + ("x" if capture else "") + square_name(m.to_sq)
    after = apply_move_unchecked(p, m)
    if is_in_check(after):
        san += "#" if not legal_moves(after) else "+"
    return san


def _strip_movetext(text: str) -> str:
    """Remove comments, variations, and NAGs from movetext."""
    out = []
    depth = 0
    in_comment = False
    i = 0
    while i < len(text):
        ch = text[i]
        if in_comment:
            if ch == "}":
                in_comment = False
        elif ch == "{":
            in_comment = True
        elif ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        elif ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif depth == 0:
            out.append(ch)
        i += 1
    return "".join(out)


def _split_games(text: str) -> Iterator[tuple[dict[str, str], str]]:
    header_re = re.compile(r"^\[(\w+)\s+\"(.*)\"\]\s*$")
    headers: dict[str, str] = {}
    movetext_lines: list[str] = []
    in_moves = False
    for line in text.splitlines():
        match = header_re.match(line)
        if match and not in_moves:
            headers[match.group(1)] = match.group(2)
            continue
        if match and in_moves:
            # New game starting.
            yield headers, "\n".join(movetext_lines)
            headers = {match.group(1): match.group(2)}
            movetext_lines = []
            in_moves = False
            continue
        if line.strip():
            movetext_lines.append(line)
            in_moves = True
    if headers or movetext_lines:
        yield headers, "\n".join(movetext_lines)


def parse_pgn(stream: TextIO | str) -> Iterator[PgnGame]:
    """Parse PGN text into games, skipping comments/NAGs/variations."""
    text = stream if isinstance(stream, str) else stream.read()
    for index, (headers, movetext) in enumerate(_split_games(text)):
        game = PgnGame(headers=headers)
        p = game.starting_position
        result = headers.get("Result", "*")
        try:
            for token in _strip_movetext(movetext).split():
                if token in RESULTS:
                    result = token
                    break
                if re.fullmatch(r"\d+\.+", token):
                    continue
                if token.startswith("$"):
                    continue
                token = re.sub(r"^\d+\.+", "", token)  # "1.e4" glued form
                if not token:
                    continue
                m = parse_san(p, token)
                game.moves.append(m)
                p = apply_move_unchecked(p, m)
        except PgnError as exc:
            raise PgnError(f"game {index}: {exc}") from exc
        game.result = result
        yield game


def format_game(
    moves: Iterable[Move],
    headers: Optional[dict[str, str]] = None,
    result: Optional[str] = None,
    start: Optional[Position] = None,
) -> str:
    """Render one game as PGN export text."""
    p = start or Position()
    headers = dict(headers or {})
    if start is not None and to_fen(start) != STARTING_FEN:
        headers.setdefault("FEN", to_fen(start))
        headers.setdefault("SetUp", "1")
    tokens = []
    for m in moves:
        if p.side_to_move > 0:
            tokens.append(f"{p.fullmove_number}.")
        tokens.append(to_san(p, m))
        p = apply_move_unchecked(p, m)
    if result is None:
        result = "*"
    headers.setdefault("Result", result)
    lines = [f'[{k} "{v}"]' for k, v in headers.items()]
    body = " ".join(tokens + [result])
    # Wrap movetext at 80 columns.
    wrapped: list[str] = []
    line = ""
    for tok in body.split():
        if len(line) + len(tok) + 1 > 80:
            wrapped.append(line)
            line = tok
        else:
            line = tok if not line else line + " " + tok
    if line:
        wrapped.append(line)
    return "\n".join(lines) + "\n\n" + "\n".join(wrapped) + "\n"
