from semirings import cache
from semirings.semigroups import SemigroupConstraint, _classes, semigroup_classes
from semirings.tables import Mode

COMM = SemigroupConstraint(commutative=True)


def test_cache_roundtrip_is_byte_identical(tmp_path):
    classes = semigroup_classes(4, COMM, Mode.ISO, cache_dir=tmp_path)
    path = cache.cache_path(tmp_path, 4, COMM, Mode.ISO)
    first = path.read_bytes()
    assert first == cache.render(4, COMM, Mode.ISO, [s.table for s in _classes(4, COMM, Mode.ISO)])

    hit = semigroup_classes(4, COMM, Mode.ISO, cache_dir=tmp_path)
    assert [s.table for s in hit] == [s.table for s in classes]
    assert [s.aut for s in hit] == [s.aut for s in classes]
    assert path.read_bytes() == first


def test_corrupt_cache_is_regenerated(tmp_path):
    semigroup_classes(3, mode=Mode.ISO_OR_ANTI, cache_dir=tmp_path)
    path = cache.cache_path(tmp_path, 3, SemigroupConstraint(), Mode.ISO_OR_ANTI)
    good = path.read_bytes()
    path.write_bytes(good.replace(b"000;000;000", b"000;000;001"))
    again = semigroup_classes(3, mode=Mode.ISO_OR_ANTI, cache_dir=tmp_path)
    assert len(again) == 18
    assert path.read_bytes() == good


def test_header_binds_query(tmp_path):
    data = cache.render(2, COMM, Mode.ISO, [])
    assert cache.parse(data, 2, COMM, Mode.ISO) == []
    assert cache.parse(data, 3, COMM, Mode.ISO) is None
    assert cache.parse(data, 2, SemigroupConstraint(), Mode.ISO) is None
    assert cache.parse(b"garbage", 2, COMM, Mode.ISO) is None


def test_env_var(monkeypatch, tmp_path):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    assert cache.default_cache_dir() == tmp_path
    monkeypatch.delenv(cache.ENV_VAR)
    assert cache.default_cache_dir() is None
