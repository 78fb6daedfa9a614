"""
Derivation closure of an adversary holding the state of compromised nodes.

Knowledge is a linear span over GF(2): every share atom is one bit, every payload the
XOR of the atoms in its content.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from ..common.logging import setup_logger
from .domain import Envelope, GroupKey, GroupKind, ProtocolTranscript, SealMode
from .party import KeyDirectory

logger = setup_logger(__name__)

BRUTE_FORCE_LIMIT = 20


class _AtomIndex:
    def __init__(self):
        self._bits: Dict[str, int] = {}

    def vector(self, atoms: Iterable[str]) -> int:
        v = 0
        for atom in atoms:
            if atom not in self._bits:
                self._bits[atom] = len(self._bits)
            v ^= 1 << self._bits[atom]
        return v


class GF2Span:
    """Row-reduced basis keyed by leading bit."""

    def __init__(self):
        self.basis: Dict[int, int] = {}

    def reduce(self, v: int) -> int:
        while v:
            pivot = v.bit_length() - 1
            row = self.basis.get(pivot)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        residue = self.reduce(v)
        if residue:
            self.basis[residue.bit_length() - 1] = residue
            return True
        return False

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class ClosureResult:
    derivable: bool
    opened: int
    known_keys: FrozenSet[int]
    rank: int


def _group_key_atoms(transcripts: Sequence[ProtocolTranscript], directory: Optional[KeyDirectory]) -> Dict[str, FrozenSet[str]]:
    atoms: Dict[str, FrozenSet[str]] = {}
    if directory is not None:
        atoms.update({key_id: gk.atoms for key_id, gk in directory.group_keys.items()})
    for t in transcripts:
        if t.outcome is not None:
            atoms[t.outcome.key_id] = t.outcome.atoms
    return atoms


def _initial_knowledge(
    compromised: Iterable[int], directory: KeyDirectory
) -> Tuple[FrozenSet[int], List[FrozenSet[str]]]:
    keys: Set[int] = set()
    known: List[FrozenSet[str]] = []
    for node in sorted(set(compromised)):
        party = directory.party(node)
        keys |= party.ring
        known.extend(frozenset({share.atom}) for share in party.shares.values())
        known.extend(gk.atoms for gk in party.group_keys.values())
    return frozenset(keys), known


def _openable(envelope: Envelope, keys: FrozenSet[int], in_span, group_atoms: Mapping[str, FrozenSet[str]]) -> bool:
    if envelope.mode == SealMode.PAIRWISE:
        return envelope.required_keys <= keys
    atoms = group_atoms.get(envelope.group_key_id)
    return atoms is not None and in_span(atoms)


class AdversaryKnowledge:
    """
    Closure of what a compromised set learns from the recorded transcripts: it holds the
    rings, shares and group keys of its nodes and opens every envelope it can until
    nothing new opens.
    """

    def __init__(
        self, compromised: Iterable[int], transcripts: Sequence[ProtocolTranscript], directory: KeyDirectory
    ):
        self.compromised = frozenset(compromised)
        self._index = _AtomIndex()
        self.span = GF2Span()
        self.keys, known = _initial_knowledge(self.compromised, directory)
        for atoms in known:
            self.span.add(self._index.vector(atoms))
        group_atoms = _group_key_atoms(transcripts, directory)

        pending = [env for t in transcripts for env in t.envelopes]
        self.opened = 0
        progress = True
        while progress:
            progress = False
            remaining = []
            for envelope in pending:
                if _openable(envelope, self.keys, self.knows, group_atoms):
                    self.opened += 1
                    progress = self.span.add(self._index.vector(envelope.content)) or progress
                else:
                    remaining.append(envelope)
            pending = remaining

    def knows(self, atoms: Iterable[str]) -> bool:
        return self._index.vector(atoms) in self.span

    def can_derive(self, target: GroupKey) -> bool:
        return self.knows(target.atoms)


def derivation_closure(
    compromised: Iterable[int],
    target: GroupKey,
    transcripts: Sequence[ProtocolTranscript],
    directory: KeyDirectory,
) -> ClosureResult:
    knowledge = AdversaryKnowledge(compromised, transcripts, directory)
    return ClosureResult(
        derivable=knowledge.can_derive(target), opened=knowledge.opened, known_keys=knowledge.keys,
        rank=knowledge.span.rank,
    )


def adversary_can_derive(
    compromised: Iterable[int],
    target: GroupKey,
    transcripts: Sequence[ProtocolTranscript],
    directory: KeyDirectory,
) -> bool:
    return AdversaryKnowledge(compromised, transcripts, directory).can_derive(target)


def brute_force_can_derive(
    compromised: Iterable[int],
    target: GroupKey,
    transcripts: Sequence[ProtocolTranscript],
    directory: KeyDirectory,
) -> bool:
    """
    Independent oracle: the span is kept as the explicit set of every XOR combination.
    """
    keys, known = _initial_knowledge(compromised, directory)
    group_atoms = _group_key_atoms(transcripts, directory)
    span: Set[FrozenSet[str]] = {frozenset()}

    def grow(atoms: FrozenSet[str]) -> bool:
        nonlocal span
        if atoms in span:
            return False
        if len(span) >= 2 ** BRUTE_FORCE_LIMIT:
            raise ValueError("Brute-force oracle exceeded its span limit")
        span = span | {s ^ atoms for s in span}
        return True

    for atoms in known:
        grow(atoms)
    envelopes = [env for t in transcripts for env in t.envelopes]
    changed = True
    while changed:
        changed = False
        for envelope in envelopes:
            if _openable(envelope, keys, lambda a: frozenset(a) in span, group_atoms):
                changed = grow(envelope.content) or changed
    return target.atoms in span


def exposed_links(compromised: Iterable[int], transcript: ProtocolTranscript, directory: KeyDirectory) -> List[Tuple[int, int]]:
    """
    Owner-member links of an fR run whose full pairwise key set the adversary holds.
    """
    if transcript.kind != GroupKind.FR:
        return []
    keys, _ = _initial_knowledge(compromised, directory)
    owner = transcript.owner
    return [
        (owner, member) for member in transcript.members
        if member != owner and directory.pairwise_keys(owner, member) <= keys
    ]


def compromise_report(
    compromised_sets: Sequence[Iterable[int]],
    transcripts: Sequence[ProtocolTranscript],
    directory: KeyDirectory,
) -> List[dict]:
    """
    For every compromised set, which established group keys become derivable.
    """
    report = []
    established = [t for t in transcripts if t.established]
    for compromised in compromised_sets:
        nodes = sorted(set(compromised))
        knowledge = AdversaryKnowledge(nodes, transcripts, directory)
        derivable = [
            {
                "key_id": t.outcome.key_id,
                "insider": bool(set(nodes) & set(t.members)),
                "exposed_links": [list(l) for l in exposed_links(nodes, t, directory)],
            }
            for t in established if knowledge.can_derive(t.outcome)
        ]
        report.append({
            "compromised": nodes,
            "group_keys": len(established),
            "opened_envelopes": knowledge.opened,
            "derivable_count": len(derivable),
            "derivable": derivable,
        })
        logger.info(f"Compromised {nodes}: {len(derivable)}/{len(established)} group keys derivable")
    return report
