import json

import pytest

from subarch import (
    HashMismatchError,
    LibraryFormatError,
    architecture_from_definition,
    build_library,
    canonical_key,
    induced_subgraph,
    library_document,
    load_library,
    save_library,
)

RING6 = {"name": "ring6", "num_qubits": 6,
         "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 5]]}


@pytest.fixture()
def ring_arch():
    return architecture_from_definition(RING6)


@pytest.fixture()
def small_library(ring_arch):
    return build_library(ring_arch, sizes=[3, 4], cover_limits=[1, 2])


class TestRoundTrip:
    def test_save_load_identity(self, tmp_path, ring_arch, small_library, monkeypatch):
        path = tmp_path / "lib.json"
        save_library(small_library, path)
        loaded = load_library(path, ring_arch)
        assert loaded == small_library

    def test_candidate_class_keys_survive(self, tmp_path, ring_arch, small_library):
        path = tmp_path / "lib.json"
        save_library(small_library, path)
        loaded = load_library(path, ring_arch)
        entry = loaded.entry_for(4)
        original = small_library.entry_for(4)
        for vs_loaded, vs_orig in zip(entry.candidates, original.candidates):
            k1 = canonical_key(induced_subgraph(ring_arch.graph, vs_loaded))
            k2 = canonical_key(induced_subgraph(ring_arch.graph, vs_orig))
            assert k1 == k2

    def test_timestamp_honors_epoch_override(self, ring_arch, monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
        lib = build_library(ring_arch, sizes=[3])
        assert lib.created == "1970-01-01T00:00:00Z"


class TestValidation:
    def test_hash_mismatch(self, tmp_path, small_library):
        path = tmp_path / "lib.json"
        save_library(small_library, path)
        edited = architecture_from_definition(
            {"name": "ring6", "num_qubits": 6,
             "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [1, 5]]}
        )
        with pytest.raises(HashMismatchError):
            load_library(path, edited)

    def test_unknown_version(self, tmp_path, ring_arch, small_library):
        doc = library_document(small_library)
        doc["format_version"] = 99
        path = tmp_path / "lib.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(LibraryFormatError, match="version"):
            load_library(path, ring_arch)

    def test_not_a_library(self, tmp_path, ring_arch):
        path = tmp_path / "junk.json"
        path.write_text('{"something": 1}', encoding="utf-8")
        with pytest.raises(LibraryFormatError):
            load_library(path, ring_arch)

    def test_malformed_json(self, tmp_path, ring_arch):
        path = tmp_path / "junk.json"
        path.write_text("{nope", encoding="utf-8")
        with pytest.raises(LibraryFormatError, match="line 1"):
            load_library(path, ring_arch)


class TestContents:
    def test_entries_reload_to_connected_subarchitectures(self, ring_arch, small_library):
        from subarch import is_connected

        for _, entry in small_library.entries:
            for vs in entry.candidates + entry.optimal:
                assert is_connected(induced_subgraph(ring_arch.graph, vs))

    def test_coverings_respect_bounds(self, small_library):
        for _, entry in small_library.entries:
            for k, members in entry.coverings:
                assert len(members) <= k
