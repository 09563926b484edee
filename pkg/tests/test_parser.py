# tests/test_parser.py
import random

import pytest

import oracles
from coordination.categories import Cat
from coordination.cli import read_corpus, tokenize
from coordination.config import BUNDLED_CORPUS
from coordination.errors import ChartOverflowError, UnknownTokenError
from coordination.parser import (
    RULE_COORD,
    RULE_HEAD,
    Edge,
    build_tuples,
    combine_head_complements,
    coordinate,
    lex_scan,
    parse,
    subject_attach,
)
from coordination.requirements import EMPTY, ArgSpec, Requirement
from coordination.satisfaction import CoordSig, Tuple

NP = Cat("NP")
PP_A = Cat("PP", {"prep": "a"})
COMPL = Cat("Compl")
INF = Cat("Inf")
INF_NP = Cat("Inf", subcat=Requirement.of(ArgSpec.of(NP)))
NEEDS_NP = Requirement.of(ArgSpec.of(NP))

JUDGMENTS = read_corpus(BUNDLED_CORPUS.read_text(encoding="utf-8"))
ACCEPTED = [j.sentence for j in JUDGMENTS if j.accept]

FIGURE = "jean conseille à son père d'acheter et à sa mère d'utiliser un lave-vaisselle"
FIGURE_COORD = CoordSig((Tuple.of(PP_A, INF_NP), Tuple.of(PP_A, INF_NP)), NEEDS_NP)


def edge(start, end, cat, phon=None):
    return Edge(start, end, cat, tuple(phon or [f"w{i}" for i in range(start, end)]))


def nodes(tree):
    yield tree
    for child in tree.children:
        yield from nodes(child)


# ── Lexical scanning ────────────────────────────────────────────────────


def test_lex_scan_keeps_multiword_entries(french):
    chart = lex_scan(["je", "sais", "son", "âge"], french)
    assert {(e.start, e.end) for e in chart} == {(0, 1), (1, 2), (2, 4)}


def test_lex_scan_keeps_every_match_length(french):
    chart = lex_scan(tokenize("un livre"), french)
    assert {(e.start, e.end) for e in chart} == {(0, 1), (1, 2), (0, 2)}


def test_lex_scan_rejects_empty_input(french):
    with pytest.raises(ValueError):
        lex_scan([], french)


def test_parse_of_no_tokens_is_an_empty_forest(french):
    forest = parse([], french)
    assert not forest
    assert forest.roots == [] and forest.tokens == ()


def test_lex_scan_names_unknown_tokens(french):
    with pytest.raises(UnknownTokenError) as err:
        lex_scan(["je", "sais", "xyzzy"], french)
    assert err.value.tokens == ("xyzzy",)
    assert "xyzzy" in str(err.value)


# ── Head saturation ─────────────────────────────────────────────────────


def test_functor_complement_passes_its_requirement_up():
    pretend = edge(0, 1, Cat("V", subcat=Requirement.of(ArgSpec.of(INF, INF_NP))))
    (mother,) = combine_head_complements(pretend, [edge(1, 2, INF_NP)])
    assert mother.body == Cat("V", subcat=NEEDS_NP)
    assert (mother.start, mother.end) == (0, 2)


def test_saturated_head_takes_nothing():
    assert combine_head_complements(edge(0, 1, NP), [edge(1, 2, NP)]) == []


def test_coordinate_head_shares_its_requirement():
    gives_to = Cat("V", subcat=Requirement.of(ArgSpec.of(PP_A)))
    coord = edge(0, 7, CoordSig((Tuple.of(gives_to), Tuple.of(gives_to)), Requirement.of(ArgSpec.of(PP_A))))
    (mother,) = combine_head_complements(coord, [edge(7, 8, PP_A)])
    assert mother.body == Cat("V")
    assert mother.saturated


def test_coordination_of_tuples_is_saturated_in_two_steps():
    conseille = edge(0, 1, Cat("V", subcat=Requirement.of(ArgSpec.of(PP_A), ArgSpec.of(NP, INF_NP))))
    coord = edge(1, 9, FIGURE_COORD)
    (vp,) = combine_head_complements(conseille, [coord])
    assert vp.body == Cat("V", subcat=NEEDS_NP)
    (saturated,) = combine_head_complements(vp, [edge(9, 11, NP)])
    assert saturated.body == Cat("V")


def test_only_the_last_complement_may_be_unsaturated():
    donne = edge(0, 1, Cat("V", subcat=Requirement.of(ArgSpec.of(NP, INF_NP), ArgSpec.of(PP_A))))
    assert combine_head_complements(donne, [edge(1, 2, INF_NP), edge(2, 3, PP_A)]) == []
    (mother,) = combine_head_complements(donne, [edge(1, 2, PP_A), edge(2, 3, INF_NP)])
    assert mother.body == Cat("V", subcat=NEEDS_NP)


def test_head_and_complement_cannot_both_stay_unsaturated():
    promet = edge(0, 1, Cat("V", subcat=Requirement.of(ArgSpec.of(PP_A), ArgSpec.of(INF, INF_NP))))
    assert combine_head_complements(promet, [edge(1, 3, INF_NP)]) == []


def test_partial_saturation_keeps_the_remainder():
    achete = edge(0, 1, Cat("V", subcat=Requirement.of(ArgSpec.of(NP), ArgSpec.of(PP_A))))
    (mother,) = combine_head_complements(achete, [edge(1, 3, NP)])
    assert mother.body.subcat == Requirement.of(ArgSpec.of(PP_A))


def test_complements_must_be_contiguous():
    head = edge(0, 1, Cat("V", subcat=NEEDS_NP))
    with pytest.raises(ValueError):
        combine_head_complements(head, [edge(2, 3, NP)])


def test_subject_attach():
    assert subject_attach(edge(0, 1, NP), edge(1, 3, Cat("V"))).body == Cat("S")
    assert subject_attach(edge(0, 1, NP), edge(1, 3, Cat("V", subcat=NEEDS_NP))) is None
    assert subject_attach(edge(0, 1, COMPL), edge(1, 3, Cat("V"))) is None
    assert subject_attach(edge(0, 1, NP), edge(2, 3, Cat("V"))) is None


# ── Tuples and coordination ─────────────────────────────────────────────


def test_build_tuples_runs_of_adjacent_edges(french):
    chart = lex_scan(tokenize("à pierre son vélo"), french)
    shapes = {c.shape for c in build_tuples(chart, 3, starting_at=0)}
    assert shapes == {Tuple.of(PP_A), Tuple.of(PP_A, NP)}


def test_build_tuples_single_constituent(french):
    chart = lex_scan(tokenize("son vélo"), french)
    assert [c.shape for c in build_tuples(chart, 3)] == [Tuple.of(NP)]


def test_build_tuples_never_puts_a_functor_first(french):
    chart = lex_scan(tokenize("d'acheter à pierre"), french)
    shapes = {c.shape for c in build_tuples(chart, 3, starting_at=0)}
    assert shapes == {Tuple.of(INF_NP)}


def test_build_tuples_respects_the_length_limit(french):
    chart = lex_scan(tokenize("à pierre son vélo"), french)
    assert {c.shape.arity for c in build_tuples(chart, 1)} == {1}
    with pytest.raises(ValueError):
        build_tuples(chart, 0)


def test_coordinate_unlike_categories(french):
    chart = lex_scan(tokenize("son âge et qu'elle est venue ici"), french)
    labels = {e.label for e in coordinate(chart, french) if (e.start, e.end) == (0, 7)}
    assert labels == {"NP∧Compl"}


def test_coordinate_builds_what_a_head_will_reject(french):
    chart = lex_scan(tokenize("à marie et qu'elle est venue ici"), french)
    labels = {e.label for e in coordinate(chart, french)}
    assert labels == {"PP[prep=a]∧Compl", "NP[temp=no]∧Compl"}


def test_coordinate_tuples_with_a_shared_residual(french):
    chart = lex_scan(tokenize("à son père d'acheter et à sa mère d'utiliser"), french)
    assert [e.body for e in coordinate(chart, french)] == [FIGURE_COORD]


# ── Parsing ─────────────────────────────────────────────────────────────


@pytest.mark.parametrize("judgment", JUDGMENTS, ids=lambda j: f"line{j.source}")
def test_bundled_judgments(parse_text, judgment):
    assert bool(parse_text(judgment.sentence)) == judgment.accept


def test_coordinated_tuples_with_a_shared_object(parse_text):
    forest = parse_text(FIGURE)
    tokens = tokenize(FIGURE)
    (coord,) = [e for e in forest.chart.spanning(2, 11) if e.is_coord]
    assert coord.body == FIGURE_COORD
    assert str(coord.residual) == "{NP}"
    assert " ".join(coord.phon) == " ".join(tokens[2:11])
    assert any(n.edge is coord for n in nodes(forest.first_tree(forest.roots[0])))


def test_intermediate_verb_phrase_needs_the_shared_object(parse_text):
    forest = parse_text(FIGURE.split(" ", 1)[1], root="V")
    (root,) = forest.roots
    tree = forest.first_tree(root)
    assert tree.rule == RULE_HEAD
    vp, obj = tree.children
    assert vp.edge.body == Cat("V", subcat=NEEDS_NP)
    assert obj.edge.body == NP and obj.edge.phon == ("un", "lave-vaisselle")
    head, coord = vp.children
    assert head.edge.phon == ("conseille",)
    assert coord.edge.body == FIGURE_COORD
    assert coord.rule == RULE_COORD


def test_temporal_adjuncts_of_a_verb_coordinate(parse_text):
    assert parse_text("a vu pierre hier et marie lundi", root="V")
    assert parse_text("a vu pierre hier", root="V")
    assert parse_text("a vu pierre", root="V")
    assert not parse_text("a vu hier et lundi", root="V")
    forest = parse_text("jean a vu pierre hier et marie lundi")
    (coord,) = [e for e in forest.chart.spanning(3, 8) if e.is_coord]
    assert coord.label == "<NP[temp=no],Adv>∧<NP[temp=no],NP[temp=yes]>"


def test_residuals_of_recevoir_de_jean_and_offrir_a_pierre(parse_text):
    forest = parse_text("je pense recevoir de jean et offrir à pierre du caviar de russie")
    left = [e for e in forest.chart.spanning(2, 5) if not e.is_coord]
    right = [e for e in forest.chart.spanning(6, 9) if not e.is_coord]
    assert {e.residual for e in left} == {NEEDS_NP}
    assert {e.residual for e in right} == {NEEDS_NP}


def test_complement_order_is_free(parse_text):
    assert parse_text("je demande à pierre son vélo")
    assert parse_text("je demande son vélo à pierre")


def test_root_part_is_configurable(parse_text):
    assert not parse_text("danse la valse")
    assert parse_text("danse la valse", root="V")


def test_forest_enumerates_every_tree(parse_text):
    forest = parse_text("je sais son âge et son adresse")
    trees = list(forest.trees())
    assert len(trees) >= len(forest.roots) >= 1
    assert trees == list(forest.trees())


def test_chart_overflow(parse_text):
    with pytest.raises(ChartOverflowError) as err:
        parse_text(FIGURE, max_edges=5)
    assert err.value.limit == 5


def test_unknown_token(parse_text):
    with pytest.raises(UnknownTokenError):
        parse_text("je sais xyzzy")


@pytest.mark.parametrize(
    "frame, first, second",
    [
        ("je sais {}", "son âge", "qu'elle est venue ici"),
        ("je sais {}", "à marie", "qu'elle est venue ici"),
        ("je demande {}", "l'addition", "que quelqu'un paie"),
        ("je rends {}", "l'addition", "que quelqu'un paie"),
        ("il est {}", "le père de marie", "fier de l'être"),
        ("jean danse {}", "la valse", "le tango"),
    ],
)
def test_conjunct_order_does_not_matter(parse_text, frame, first, second):
    forward = parse_text(frame.format(f"{first} et {second}"))
    backward = parse_text(frame.format(f"{second} et {first}"))
    assert bool(forward) == bool(backward)


@pytest.mark.property_based
@pytest.mark.parametrize("judgment", JUDGMENTS, ids=lambda j: f"line{j.source}")
def test_closure_does_not_depend_on_agenda_order(french, judgment):
    tokens = tokenize(judgment.sentence)
    expected = parse(tokens, french).chart.keys()
    for seed in range(10):
        assert parse(tokens, french, rng=random.Random(seed)).chart.keys() == expected


@pytest.mark.property_based
@pytest.mark.parametrize("sentence", ACCEPTED)
def test_coordination_residuals_are_reproducible(parse_text, sentence):
    for e in parse_text(sentence).chart:
        if not e.is_coord:
            continue
        assert len({t.arity for t in e.body.tuples}) == 1
        assert e.residual in oracles.residuals([t.residual for t in e.body.tuples])


@pytest.mark.property_based
@pytest.mark.parametrize("sentence", ACCEPTED)
def test_argument_coordinated_with_itself_is_accepted(parse_text, sentence):
    forest = parse_text(sentence)
    tokens = list(forest.tokens)
    arguments = set()
    for node in nodes(forest.first_tree(forest.roots[0])):
        if node.rule != RULE_HEAD:
            continue
        for complement in node.children[1:]:
            e = complement.edge
            if not e.is_coord and e.saturated and e.body.part in ("NP", "PP", "Compl"):
                arguments.add((e.start, e.end))
    for start, end in sorted(arguments):
        argument = tokens[start:end]
        doubled = tokens[:start] + argument + ["et"] + argument + tokens[end:]
        assert parse_text(" ".join(doubled)), " ".join(doubled)


def test_empty_residual_for_saturated_conjuncts(parse_text):
    forest = parse_text("je sais son âge et qu'elle est venue ici")
    coords = [e for e in forest.chart if e.is_coord]
    assert coords and all(e.residual == EMPTY for e in coords if e.label == "NP∧Compl")
