import pytest

from steffroot import Problem, StabilizerFn, get_problem, profile, solve
from steffroot.analysis import classify_outcome
from steffroot.basins import (BasinImage, cluster_roots, compute_basins, pixel_center, ppm_bytes,
                              render_ppm)


def test_cluster_examples():
    table, assign = cluster_roots([1.0000001, 0.9999999, 3.0], 1e-3)
    assert len(table) == 2 and assign == [0, 0, 1]
    assert cluster_roots([], 1e-3) == ([], [])
    table, assign = cluster_roots([0.0, 1e-4, 2e-4], 1.5e-4)
    assert len(table) == 2 and assign == [0, 0, 1]
    with pytest.raises(ValueError):
        cluster_roots([0.0], 0)


def test_pixel_centers():
    assert pixel_center(0, 0, 4, 4, (-2, 2), (-2, 2)) == (-1.5, 1.5)
    assert pixel_center(3, 3, 4, 4, (-2, 2), (-2, 2)) == (1.5, -1.5)


def affine_problem():
    comps = lambda m: [lambda v: 2 * v[0] + v[1] - 1, lambda v: v[0] - v[1] + 2]
    return Problem("affine", "system", 2, comps, ((-1 / 3, 5 / 3),), (0.0, 0.0))


def test_affine_grid_single_root():
    img = compute_basins(affine_problem(), width=12, height=9)
    assert len(img.root_table) == 1
    assert all(lab == 1 for row in img.labels for lab in row)
    assert len(img.labels) == 9 and all(len(r) == 12 for r in img.labels)


def test_f21_three_roots():
    img = compute_basins(get_problem("f21"), profile("table3", "normal", StabilizerFn("tanh")),
                         width=100, height=100)
    assert len(img.root_table) == 3
    assert img.nonconvergent_fraction < 0.01
    for r in img.root_table:
        assert any(abs(r[0] - k[0]) + abs(r[1] - k[1]) < 1e-4 for k in get_problem("f21").known_roots)


def test_pixel_consistency():
    p = get_problem("f21")
    cfg = profile("table3", "accelerated", StabilizerFn("clamp"))
    img = compute_basins(p, cfg, width=30, height=30)
    for row, col in [(0, 0), (7, 22), (15, 15), (29, 3), (11, 11)]:
        tr = solve(p, list(img.pixel_center(row, col)), cfg)
        lab = img.labels[row][col]
        if lab == 0:
            assert not tr.converged
        else:
            out = classify_outcome(tr, img.root_table, 1e-4)
            assert out.matched_root == lab - 1


def test_deterministic_across_jobs():
    p = get_problem("f18")
    cfg = profile("table3", "accelerated", StabilizerFn("tanh"))
    a = render_ppm(compute_basins(p, cfg, width=24, height=20, jobs=1))
    b = render_ppm(compute_basins(p, cfg, width=24, height=20, jobs=2))
    assert a == b


def image(labels, roots):
    h, w = len(labels), len(labels[0])
    return BasinImage(w, h, (-1, 1), (-1, 1), labels, roots, [[1] * w for _ in range(h)])


def test_ppm_single_black_pixel(tmp_path):
    path = tmp_path / "one.ppm"
    data = render_ppm(image([[0]], []), path=path)
    assert path.read_bytes() == data == b"P6\n1 1\n255\n\x00\x00\x00"
    assert len(data) == 11 + 3  # header "P6\n1 1\n255\n" plus one RGB triple


def test_ppm_palette_used():
    data = ppm_bytes(image([[0, 1]], [(0.0, 0.0)]), [(0, 0, 0), (255, 0, 0)])
    assert data.endswith(bytes([0, 0, 0, 255, 0, 0]))


def test_ppm_palette_too_short():
    with pytest.raises(ValueError):
        ppm_bytes(image([[0, 1]], [(0.0, 0.0), (1.0, 0.0)]), [(0, 0, 0), (255, 0, 0)])


def test_basins_reject_non_planar():
    with pytest.raises(ValueError):
        compute_basins(get_problem("f20"))
