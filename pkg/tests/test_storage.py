import random

import pytest

from ldm3n import IndexKind, Literal, StoreConfig, Triple, create_store, open_store
from ldm3n.errors import StoreCorrupt
from ldm3n.storage import load_triples, neighbors, pair_count

from conftest import ex
from oracles import random_triples


def ids_for(store, *names):
    return [store.resolve(ex(n)) for n in names]


def test_succession_load_report_and_keys(succession_store):
    store = succession_store
    assert store.report.triples == 6
    assert store.report.distinct_terms == 10
    assert store.report.duplicates == 0
    bc, h1, h2 = ids_for(store, "BillClinton", "holdsPos#1", "holdsPos#2")
    assert store.pair_count(bc) == 2
    assert store.pair_count(h1) == 2
    assert store.pair_count(h2) == 2
    assert sum(store.counts.values()) == 6


def test_empty_input_empty_store(make_store):
    store = make_store([])
    assert store.report.triples == 0
    assert store.report.distinct_terms == 0
    assert list(store.iter_triples()) == []


def test_duplicate_triples_collapse(tmp_path, succession_triples):
    doubled = succession_triples + [succession_triples[0]]
    store = create_store(StoreConfig(tmp_path / "dup"), doubled)
    assert store.report.triples == 6
    assert store.report.duplicates == 1


def test_neighbors_of_succession_nodes(succession_store):
    store = succession_store
    h1, spo, hp, hs, gwb = ids_for(
        store, "holdsPos#1", "singletonPropOf", "holdsPos", "hasSuccessor", "GeorgeWBush"
    )
    assert sorted(store.neighbors(h1)) == sorted([(spo, hp), (hs, gwb)])
    assert store.neighbors(gwb) == []  # never a subject
    assert neighbors(store.index, h1) == store.neighbors(h1)


def test_literals_are_sinks(make_store):
    store = make_store([Triple(ex("s"), ex("p"), Literal("v"))])
    lit = store.resolve(Literal("v"))
    assert lit % 2 == 1
    assert store.neighbors(lit) == []
    assert store.pair_count(lit) == 0


def test_unknown_key_has_no_pairs(succession_store):
    assert succession_store.pair_count(9999) == 0
    assert succession_store.neighbors(9999) == []


def test_pair_count_matches_brute_recount(make_store):
    rng = random.Random(7)
    triples = random_triples(rng, 120)
    store = make_store(triples)
    recount = {}
    for s, _p, _o in store.iter_triples():
        recount[s] = recount.get(s, 0) + 1
    for key in list(store.dictionary.ids()):
        assert store.pair_count(key) == recount.get(key, 0)
        assert pair_count(store.index, key) == len(store.neighbors(key))
    assert sum(recount.values()) == store.report.triples


def test_neighbor_order_is_sorted(make_store):
    rng = random.Random(11)
    store = make_store(random_triples(rng, 150))
    for key in store.index.keys():
        pairs = store.neighbors(key)
        assert pairs == sorted(pairs)


def test_durability_round_trip(tmp_path, succession_triples):
    config = StoreConfig(tmp_path / "dur", index_kind=IndexKind.ORDERED, cache_size_bytes=1 << 20)
    dictionary, index, report = load_triples(config, succession_triples)
    reopened = open_store(tmp_path / "dur")
    assert reopened.config.index_kind is IndexKind.ORDERED
    assert reopened.report.triples == report.triples
    assert reopened.report.distinct_terms == report.distinct_terms
    for key in index.keys():
        assert reopened.index.neighbors(key) == index.neighbors(key)
    for term_id, term in dictionary.items():
        assert reopened.dictionary.decode(term_id) == term
        assert reopened.dictionary.lookup(term) == term_id


def test_hash_and_ordered_answers_match(tmp_path):
    rng = random.Random(13)
    triples = random_triples(rng, 200)
    hash_store = create_store(StoreConfig(tmp_path / "h", IndexKind.HASH), triples)
    ordered_store = create_store(StoreConfig(tmp_path / "o", IndexKind.ORDERED), triples)
    assert list(hash_store.iter_triples()) == list(ordered_store.iter_triples())
    for key in hash_store.index.keys():
        assert hash_store.neighbors(key) == ordered_store.neighbors(key)
        assert hash_store.pair_count(key) == ordered_store.pair_count(key)


def test_store_files_exist_with_magic(tmp_path, succession_triples):
    path = tmp_path / "files"
    create_store(StoreConfig(path), succession_triples)
    for name in ("dict_fwd", "dict_rev", "adj", "adj_count", "meta"):
        data = (path / name).read_bytes()
        assert data[:6] == b"LDM3N\0", name


def test_corrupt_magic_detected(tmp_path, succession_triples):
    path = tmp_path / "bad"
    create_store(StoreConfig(path), succession_triples)
    (path / "adj").write_bytes(b"XXXXXX" + (path / "adj").read_bytes()[6:])
    with pytest.raises(StoreCorrupt):
        open_store(path)


def test_missing_file_detected(tmp_path, succession_triples):
    path = tmp_path / "missing"
    create_store(StoreConfig(path), succession_triples)
    (path / "adj_count").unlink()
    with pytest.raises(StoreCorrupt):
        open_store(path)


def test_cache_size_must_be_positive(tmp_path):
    with pytest.raises(ValueError):
        StoreConfig(tmp_path / "x", cache_size_bytes=0)


def test_cursor_iteration(succession_store):
    store = succession_store
    bc = store.resolve(ex("BillClinton"))
    assert list(store.index.cursor(bc)) == store.neighbors(bc)
