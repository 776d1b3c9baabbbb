"""Two-dimensional monospace rendering of DRSs, mirroring the usual
box notation: universe row, rule, condition rows; sub-boxes compose
side by side around connectives."""
from __future__ import annotations

from .drs import Alpha, Condition, Disj, Drs, Eq, Impl, Marker, Neg, Pred, Qualia
from .terms import LambdaDrs, Leaf, Term
from . import linear

Block = list[str]

_QUALIA_LABELS = {
    "formal": "Qf:",
    "constitutive": "Qc:",
    "telic": "Qt:",
    "agentive": "Qa:",
}


def _marker(m: Marker) -> str:
    return f"{m.tag}{m.index}"


def _width(block: Block) -> int:
    return max((len(line) for line in block), default=0)


def _pad(block: Block, width: int, height: int) -> Block:
    top = (height - len(block)) // 2
    lines = [""] * top + block + [""] * (height - len(block) - top)
    return [line.ljust(width) for line in lines]


def _beside(*blocks: Block, sep: str = " ") -> Block:
    height = max((len(b) for b in blocks), default=0)
    padded = [_pad(b, _width(b), height) for b in blocks]
    sep_block = _pad([sep], len(sep), height) if sep else None
    out = []
    for i in range(height):
        pieces = []
        for j, b in enumerate(padded):
            if j and sep_block is not None:
                pieces.append(sep_block[i])
            pieces.append(b[i])
        out.append("".join(pieces).rstrip())
    return out


def _frame(universe: str, cond_blocks: list[Block]) -> Block:
    body: Block = []
    for b in cond_blocks:
        body.extend(b)
    width = max(_width(body), len(universe), 1)
    top = "┌" + "─" * (width + 2) + "┐"
    mid = "├" + "─" * (width + 2) + "┤"
    bot = "└" + "─" * (width + 2) + "┘"
    out = [top, f"│ {universe.ljust(width)} │", mid]
    for line in body:
        out.append(f"│ {line.ljust(width)} │")
    if not body:
        out.append(f"│ {' ' * width} │")
    out.append(bot)
    return out


def _condition_block(cond: Condition) -> Block:
    if isinstance(cond, Pred):
        return [f"{cond.name}({','.join(_marker(a) for a in cond.args)})"]
    if isinstance(cond, Eq):
        return [f"{_marker(cond.left)}={_marker(cond.right)}"]
    if isinstance(cond, Impl):
        return _beside(_drs_block(cond.antecedent), ["→"], _drs_block(cond.consequent))
    if isinstance(cond, Neg):
        return _beside(["¬"], _drs_block(cond.inner))
    if isinstance(cond, Disj):
        return _beside(_drs_block(cond.left), ["∨"], _drs_block(cond.right))
    if isinstance(cond, Alpha):
        return _beside(["α:"], _drs_block(cond.inner))
    if isinstance(cond, Qualia):
        label = [_QUALIA_LABELS[cond.role.value]]
        if isinstance(cond.payload, Drs):
            return _beside(label, _drs_block(cond.payload))
        return _beside(label, _term_block(cond.payload))
    raise ValueError(f"not a condition: {cond!r}")


def _term_block(term: Term) -> Block:
    if isinstance(term, LambdaDrs) and isinstance(term.body, Leaf):
        binder = "λ" + " ".join(_marker(m) for m, _t in term.params) + "."
        return _beside([binder], _drs_block(term.body.drs))
    if isinstance(term, Leaf):
        return _drs_block(term.drs)
    return [linear.write_term(term)]


def _drs_block(d: Drs) -> Block:
    universe = " ".join(_marker(m) for m in d.universe)
    return _frame(universe, [_condition_block(c) for c in d.conditions])


def render_drs(d: Drs) -> str:
    """Render a DRS as a unicode box drawing."""
    return "\n".join(line.rstrip() for line in _drs_block(d))


def render_term(term: Term) -> str:
    return "\n".join(line.rstrip() for line in _term_block(term))
