import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperrank import (DirectedHypergraph, HyperArc, load_canonical,
                       parse_reaction_line, parse_reactions_text,
                       reactions_to_hypergraph, save_canonical)
from hyperrank.errors import (BadWeightError, EmptySideError, IngestError,
                              ReactionSyntaxError, SchemaError,
                              TailHeadOverlapError, ValidationError)

from randgen import random_hypergraph


# ---------------------------------------------------------------- parsing

def test_parse_basic_irreversible():
    rec = parse_reaction_line("R1: ATP + H2O -> ADP + Pi + H")
    assert rec.id == "R1"
    assert rec.substrates == ("ATP", "H2O")
    assert rec.products == ("ADP", "Pi", "H")
    assert not rec.reversible
    assert rec.weight == 1.0


def test_parse_reversible_with_weight():
    rec = parse_reaction_line("R2: A <-> B @ 2.0")
    assert rec.reversible
    assert rec.weight == 2.0


def test_parse_preserves_token_order_and_duplicates():
    rec = parse_reaction_line("R: b + a + a -> c")
    assert rec.substrates == ("b", "a", "a")


def test_parse_empty_side_permissive_and_strict():
    rec = parse_reaction_line("R3: A ->")
    assert rec.products == ()
    with pytest.raises(EmptySideError):
        parse_reaction_line("R3: A ->", strict=True)
    with pytest.raises(EmptySideError):
        parse_reaction_line("R4: -> A", strict=True)


def test_parse_comments_and_blanks():
    assert parse_reaction_line("") is None
    assert parse_reaction_line("   # just a comment") is None
    rec = parse_reaction_line("R: A -> B  # bodies end at the comment")
    assert rec.products == ("B",)


def test_parse_arrow_without_spaces():
    rec = parse_reaction_line("R:A->B")
    assert rec.substrates == ("A",) and rec.products == ("B",)
    rec = parse_reaction_line("R:A<->B")
    assert rec.reversible


def test_parse_hyphenated_identifiers():
    rec = parse_reaction_line("R: Coenzyme-A -> Acetyl-CoA")
    assert rec.substrates == ("Coenzyme-A",)
    assert rec.products == ("Acetyl-CoA",)


def test_parse_syntax_errors_carry_positions():
    with pytest.raises(ReactionSyntaxError) as exc:
        parse_reaction_line("R1 A -> B", line_no=3)
    assert exc.value.line == 3
    assert exc.value.column is not None
    with pytest.raises(ReactionSyntaxError):
        parse_reaction_line(": A -> B")
    with pytest.raises(ReactionSyntaxError):
        parse_reaction_line("R: A -> B extra ->")
    with pytest.raises(ReactionSyntaxError):
        parse_reaction_line("R: A + -> B")
    with pytest.raises(ReactionSyntaxError):
        parse_reaction_line("R: A -> B !")


def test_parse_bad_weights():
    for text in ("R: A -> B @ zero", "R: A -> B @ -1", "R: A -> B @ 0",
                 "R: A -> B @", "R: A -> B @ inf", "R: A -> B @ nan"):
        with pytest.raises(BadWeightError):
            parse_reaction_line(text)


def test_parse_reactions_text_reports_line():
    text = "R1: A -> B\nR2: B -> C\nR3 C -> D\n"
    with pytest.raises(ReactionSyntaxError) as exc:
        parse_reactions_text(text)
    assert exc.value.line == 3


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=120))
def test_parser_totality_on_text(line):
    try:
        parse_reaction_line(line, strict=True)
    except IngestError as exc:
        assert exc.column is None or exc.column >= 1


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=120))
def test_parser_totality_on_bytes(payload):
    line = payload.decode("latin-1")
    try:
        parse_reaction_line(line)
    except IngestError:
        pass


# ------------------------------------------------------------- conversion

def test_reactions_to_hypergraph_basic():
    records = parse_reactions_text("R1: ATP + H2O -> ADP + Pi + H\n")
    hg, report = reactions_to_hypergraph(records)
    assert hg.n_arcs == 1
    assert hg.n_vertices == 5
    assert report.arcs == 1 and report.vertices == 5


def test_split_policy_doubles_reversible():
    records = parse_reactions_text("R2: A <-> B\n")
    hg, report = reactions_to_hypergraph(records, "split")
    assert [(a.id, a.tail, a.head) for a in hg.arcs] == [
        ("R2_fwd", (0,), (1,)), ("R2_rev", (1,), (0,))]
    assert report.split_arcs == 2

    hg, _ = reactions_to_hypergraph(records, "forward-only")
    assert [a.id for a in hg.arcs] == ["R2"]


def test_split_policy_count_property():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n_irr = int(rng.integers(0, 6))
        n_rev = int(rng.integers(0, 6))
        lines = [f"I{k}: a{k} -> b{k}" for k in range(n_irr)]
        lines += [f"V{k}: c{k} <-> d{k}" for k in range(n_rev)]
        records = parse_reactions_text("\n".join(lines))
        hg, _ = reactions_to_hypergraph(records, "split")
        assert hg.n_arcs == n_irr + 2 * n_rev


def test_overlap_rejected_with_record_id():
    records = parse_reactions_text("R4: A + B -> B + C\n")
    with pytest.raises(TailHeadOverlapError) as exc:
        reactions_to_hypergraph(records)
    assert exc.value.record_id == "R4"
    assert "B" in str(exc.value)


def test_duplicates_collapse_with_count():
    records = parse_reactions_text("R: A + A -> B\n")
    hg, report = reactions_to_hypergraph(records)
    assert hg.arcs[0].tail == (0,)
    assert report.collapsed_duplicates == 1


def test_empty_side_dropped_passively_or_raised():
    records = parse_reactions_text("EX1: glc ->\nR: glc -> pyr\n")
    hg, report = reactions_to_hypergraph(records)
    assert [a.id for a in hg.arcs] == ["R"]
    assert report.dropped == [("EX1", "empty head")]
    with pytest.raises(EmptySideError):
        reactions_to_hypergraph(records, permissive=False)


def test_unknown_reversible_policy():
    with pytest.raises(ValueError):
        reactions_to_hypergraph([], "both-ways")


# ---------------------------------------------------------- canonical JSON

def test_round_trip_hg3(hg3):
    assert load_canonical(save_canonical(hg3)) == hg3


def test_round_trip_randomized():
    rng = np.random.default_rng(29)
    for _ in range(50):
        hg = random_hypergraph(rng, max_vertices=10, max_arcs=15)
        assert load_canonical(save_canonical(hg)) == hg


@st.composite
def hypergraphs(draw):
    n = draw(st.integers(2, 6))
    names = draw(st.lists(st.text(st.characters(blacklist_categories=("Cs",)),
                                  min_size=1, max_size=6),
                          min_size=n, max_size=n, unique=True))
    m = draw(st.integers(1, 8))
    arcs = []
    for j in range(m):
        perm = draw(st.permutations(range(n)))
        ts = draw(st.integers(1, max(1, min(3, n - 1))))
        hs = draw(st.integers(1, max(1, min(3, n - ts))))
        weight = draw(st.floats(min_value=1e-6, max_value=10.0,
                                allow_nan=False, allow_infinity=False))
        arcs.append(HyperArc(f"arc{j}", tuple(perm[:ts]),
                             tuple(perm[ts:ts + hs]), weight))
    return DirectedHypergraph(tuple(names), tuple(arcs))


@settings(max_examples=150, deadline=None)
@given(hypergraphs())
def test_round_trip_property(hg):
    assert load_canonical(save_canonical(hg)) == hg


def test_load_rejects_unknown_vertex():
    doc = {"vertices": ["a"],
           "arcs": [{"id": "e", "tail": ["a"], "head": ["zz"], "weight": 1}]}
    with pytest.raises(ValidationError) as exc:
        load_canonical(json.dumps(doc))
    assert exc.value.report.codes() == {"UnknownVertex"}


def test_load_rejects_nonpositive_weight():
    doc = {"vertices": ["a", "b"],
           "arcs": [{"id": "e", "tail": ["a"], "head": ["b"], "weight": -1}]}
    with pytest.raises(ValidationError) as exc:
        load_canonical(json.dumps(doc))
    assert exc.value.report.codes() == {"NonpositiveWeight"}


def test_load_reports_every_violation():
    doc = {"vertices": ["a", "b", "b"],
           "arcs": [{"id": "e1", "tail": ["a"], "head": ["a"], "weight": 1},
                    {"id": "e2", "tail": [], "head": ["b"], "weight": 0}]}
    with pytest.raises(ValidationError) as exc:
        load_canonical(json.dumps(doc))
    assert exc.value.report.codes() == {"DuplicateVertexId", "TailHeadOverlap",
                                        "EmptyTail", "NonpositiveWeight"}


def test_load_schema_errors():
    cases = [
        "[]",
        '{"vertices": ["a"]}',
        '{"vertices": ["a"], "arcs": [], "extra": 1}',
        '{"vertices": "a", "arcs": []}',
        '{"vertices": ["a"], "arcs": [{"id": "e", "tail": ["a"], "head": ["a"]}]}',
        '{"vertices": ["a"], "arcs": [{"id": "e", "tail": ["a"], "head": ["a"],'
        ' "weight": 1, "color": "red"}]}',
        '{"vertices": ["a"], "arcs": [{"id": 3, "tail": ["a"], "head": ["a"],'
        ' "weight": 1}]}',
        '{"vertices": ["a"], "arcs": [{"id": "e", "tail": ["a"], "head": ["a"],'
        ' "weight": true}]}',
        '{"vertices": ["a"], "arcs": [{"id": "e", "tail": [1], "head": ["a"],'
        ' "weight": 1}]}',
        "{not json",
    ]
    for text in cases:
        with pytest.raises(SchemaError):
            load_canonical(text)


def test_save_uses_full_precision():
    hg = DirectedHypergraph(("a", "b"),
                            (HyperArc("e", (0,), (1,), 0.1234567890123456789),))
    again = load_canonical(save_canonical(hg))
    assert again.arcs[0].weight == hg.arcs[0].weight
