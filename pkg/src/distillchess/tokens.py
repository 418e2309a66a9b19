"""Fixed-width position tokenization and the 1968-move action vocabulary.

A position always tokenizes to 77 symbols: 64 board squares (rank 8 down to
rank 1, empty squares as '.'), side to move, castling field padded to 4,
en passant target padded to 2, halfmove clock padded to 2, fullmove number
padded to 3, and a terminal marker that anchors the fixed layout. Model
contexts append the action token (action-value prediction only) and a
reserved readout token, giving lengths 79 (AV) and 78 (SV, BC).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .core import (
    BLACK,
    CHAR_PIECES,
    EMPTY,
    KING_TARGETS,
    KNIGHT_TARGETS,
    Move,
    PIECE_CHARS,
    Position,
    WHITE,
    parse_square,
    square_name,
)
from .fen import _CASTLING_BITS

STATE_LENGTH = 77
TERMINAL_CHAR = "#"

STATE_ALPHABET = "".join(
    sorted(set("PNBRQKpnbrqk.wKQkq-abcdefgh0123456789" + TERMINAL_CHAR))
)
CHAR_TO_ID = {c: i for i, c in enumerate(STATE_ALPHABET)}

ACTION_ID_BASE = len(STATE_ALPHABET)
NUM_ACTIONS = 1968
READOUT_ID = ACTION_ID_BASE + NUM_ACTIONS
TOKEN_VOCABULARY_SIZE = READOUT_ID + 1

CONTEXT_LENGTHS = {"av": STATE_LENGTH + 2, "sv": STATE_LENGTH + 1, "bc": STATE_LENGTH + 1}

PREDICTOR_KINDS = ("av", "sv", "bc")


class TokenizationError(ValueError):
    pass


def _pad(text: str, width: int, what: str) -> str:
    if len(text) > width:
        raise TokenizationError(f"{what} {text!r} does not fit in {width} symbols")
    return text + "." * (width - len(text))


def tokenize_position(p: Position) -> str:
    """77-symbol fixed-length encoding of a position."""
    chars = []
    for rank in range(7, -1, -1):
        for file in range(8):
            piece = p.board[rank * 8 + file]
            chars.append("." if piece == EMPTY else PIECE_CHARS[piece])
    chars.append("w" if p.side_to_move == WHITE else "b")
    castling = "".join(ch for ch, bit in _CASTLING_BITS.items() if p.castling & bit) or "-"
    chars.append(_pad(castling, 4, "castling field"))
    ep = square_name(p.en_passant) if p.en_passant is not None else "-"
    chars.append(_pad(ep, 2, "en passant field"))
    chars.append(_pad(str(p.halfmove_clock), 2, "halfmove clock"))
    chars.append(_pad(str(p.fullmove_number), 3, "fullmove number"))
    chars.append(TERMINAL_CHAR)
    out = "".join(chars)
    assert len(out) == STATE_LENGTH
    return out


def detokenize_position(tokens: str) -> Position:
    """Inverse of tokenize_position."""
    if len(tokens) != STATE_LENGTH:
        raise TokenizationError(f"expected {STATE_LENGTH} symbols, got {len(tokens)}")
    board = [EMPTY] * 64
    from .core import CHAR_PIECES as _cp  # noqa: F811 - local alias for clarity

    for i, ch in enumerate(tokens[:64]):
        rank = 7 - i // 8
        file = i % 8
        if ch != ".":
            board[rank * 8 + file] = _cp[ch]
    side = WHITE if tokens[64] == "w" else BLACK
    castling = 0
    for ch in tokens[65:69]:
        if ch in _CASTLING_BITS:
            castling |= _CASTLING_BITS[ch]
    ep_text = tokens[69:71].rstrip(".")
    ep = None if ep_text in ("-", "") else parse_square(ep_text)
    halfmove = int(tokens[71:73].rstrip("."))
    fullmove = int(tokens[73:76].rstrip("."))
    return Position(tuple(board), side, castling, ep, halfmove, fullmove)


@dataclass(frozen=True)
class ActionVocabulary:
    """Lexicographically sorted list of every possible UCI move string."""

    moves: tuple[str, ...]
    _index: dict[str, int]

    def __len__(self) -> int:
        return len(self.moves)

    def __contains__(self, uci: str) -> bool:
        return uci in self._index

    def index_of(self, uci: str) -> int:
        try:
            return self._index[uci]
        except KeyError:
            raise KeyError(f"move {uci!r} not in action vocabulary") from None

    def move_at(self, idx: int) -> str:
        return self.moves[idx]


def _geometry_targets(sq: int) -> set[int]:
    # Queen rays plus knight jumps cover every piece's from/to geometry.
    targets = set(KNIGHT_TARGETS[sq])
    from .core import BISHOP_RAYS, ROOK_RAYS

    for rays in (ROOK_RAYS[sq], BISHOP_RAYS[sq]):
        for ray in rays:
            targets.update(ray)
    targets.update(KING_TARGETS[sq])
    return targets


def build_action_vocabulary() -> ActionVocabulary:
    moves: set[str] = set()
    for sq in range(64):
        for t in _geometry_targets(sq):
            moves.add(square_name(sq) + square_name(t))
    # Promotions: pawn steps from the 7th to the 8th rank (and mirrored).
    for file in range(8):
        for from_rank, to_rank in ((6, 7), (1, 0)):
            frm = from_rank * 8 + file
            for df in (-1, 0, 1):
                nf = file + df
                if 0 <= nf < 8:
                    to = to_rank * 8 + nf
                    for suffix in "qrbn":
                        moves.add(square_name(frm) + square_name(to) + suffix)
    ordered = tuple(sorted(moves))
    if len(ordered) != NUM_ACTIONS:
        raise AssertionError(f"action vocabulary has {len(ordered)} entries, expected {NUM_ACTIONS}")
    return ActionVocabulary(ordered, {m: i for i, m in enumerate(ordered)})


_VOCAB: Optional[ActionVocabulary] = None


def action_vocabulary() -> ActionVocabulary:
    """Shared vocabulary instance (built once, immutable)."""
    global _VOCAB
    if _VOCAB is None:
        _VOCAB = build_action_vocabulary()
    return _VOCAB


def action_to_index(m: Move) -> int:
    return action_vocabulary().index_of(m.uci())


def index_to_action(idx: int) -> Move:
    return Move.from_uci(action_vocabulary().move_at(idx))


def state_token_ids(p: Position) -> list[int]:
    return [CHAR_TO_ID[c] for c in tokenize_position(p)]


def assemble_context(p: Position, kind: str, move: Optional[Move] = None) -> list[int]:
    """Token-id model input: state tokens, the action token for AV, and the
    readout token the prediction head reads from."""
    if kind not in PREDICTOR_KINDS:
        raise ValueError(f"unknown predictor kind {kind!r}")
    if kind == "av":
        if move is None:
            raise ValueError("action-value context requires a move")
    elif move is not None:
        raise ValueError(f"{kind} context takes no move")
    ids = state_token_ids(p)
    if kind == "av":
        assert move is not None
        ids.append(ACTION_ID_BASE + action_to_index(move))
    ids.append(READOUT_ID)
    assert len(ids) == CONTEXT_LENGTHS[kind]
    return ids


def alphabet_sidecar() -> dict:
    """Versioned description of the token id assignment, stored next to
    checkpoints so they stay portable."""
    return {
        "version": 1,
        "state_alphabet": STATE_ALPHABET,
        "state_length": STATE_LENGTH,
        "action_id_base": ACTION_ID_BASE,
        "num_actions": NUM_ACTIONS,
        "readout_id": READOUT_ID,
        "vocabulary_size": TOKEN_VOCABULARY_SIZE,
        "actions": list(action_vocabulary().moves),
    }


def write_alphabet_sidecar(path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(alphabet_sidecar(), fh)


def check_alphabet_sidecar(data: dict) -> None:
    """Verify a sidecar loaded from disk matches this build's assignment."""
    current = alphabet_sidecar()
    for key in ("version", "state_alphabet", "action_id_base", "readout_id"):
        if data.get(key) != current[key]:
            raise ValueError(f"token alphabet sidecar mismatch on {key!r}")
    if list(data.get("actions", [])) != current["actions"]:
        raise ValueError("token alphabet sidecar mismatch on action list")
