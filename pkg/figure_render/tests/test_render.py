import numpy as np
import pytest

from figure_render.cli import main
from figure_render.render import (EXPECTED_HEADERS, FIGURE_KINDS, FigureSpec,
                                  SchemaError, load_table, render)

# synthetic datasets in the documented schemas; no dependency on the
# primary package
SAMPLES = {
    "laurent-exactness": [
        "degree,dim,trial,rel_error",
        "2,1,0,0.1", "2,1,1,0.2", "2,3,0,1e-12", "2,3,1,2e-12",
        "4,1,0,0.3", "4,5,0,1e-11",
    ],
    "noisy-monomial": [
        "sigma,dim,trial,rel_error",
        "1e-06,4,0,0.01", "1e-06,8,0,1e-05",
        "0.0001,4,0,0.1", "0.0001,8,0,0.001",
    ],
    "gibbs-sweep": [
        "beta,dim,rel_error",
        "0.5,1,0.9", "0.5,4,0.01", "0.5,8,1e-06",
        "1.0,1,0.95", "1.0,4,0.1", "1.0,8,1e-04",
    ],
    "gibbs-compare": [
        "dim,method,rel_error",
        "4,qsq,0.01", "4,fourier,1.5", "4,fixed_bound,4.0",
        "4,optimal_laurent,0.05",
        "8,qsq,1e-07", "8,fourier,0.3", "8,fixed_bound,4.0",
        "8,optimal_laurent,0.001",
    ],
    "greens-curve": [
        "omega,re_exact,im_exact,re_approx,im_approx",
        "-2.0,0.1,-0.05,0.11,-0.04", "0.0,0.5,-0.3,0.5,-0.31",
        "2.0,-0.2,-0.1,-0.2,-0.1",
    ],
    "greens-l1": [
        "dim,l1_error",
        "1,10.0", "2,5.0", "4,2.5", "8,1.2",
    ],
}


def write_csv(tmp_path, kind, lines=None):
    tmp_path.mkdir(parents=True, exist_ok=True)
    path = tmp_path / f"{kind}.csv"
    path.write_text("\n".join(lines if lines is not None else SAMPLES[kind]) + "\n")
    return path


@pytest.mark.parametrize("kind", FIGURE_KINDS)
def test_render_each_kind(kind, tmp_path):
    csv_path = write_csv(tmp_path, kind)
    out = tmp_path / f"{kind}.png"
    code = main(["--kind", kind, "--in", str(csv_path), "--out", str(out)])
    assert code == 0
    assert out.stat().st_size > 0


@pytest.mark.parametrize("kind", FIGURE_KINDS)
def test_header_only_csv_renders_empty_axes(kind, tmp_path):
    csv_path = write_csv(tmp_path, kind, [",".join(EXPECTED_HEADERS[kind])])
    out = tmp_path / "empty.png"
    code = main(["--kind", kind, "--in", str(csv_path), "--out", str(out)])
    assert code == 0
    assert out.exists()


def test_schema_mismatch_names_offending_column(tmp_path, capsys):
    csv_path = tmp_path / "bad.csv"
    csv_path.write_text("dim,l2_error\n1,0.5\n")
    out = tmp_path / "x.png"
    code = main(["--kind", "greens-l1", "--in", str(csv_path), "--out", str(out)])
    assert code != 0
    err = capsys.readouterr().err
    assert "l2_error" in err and "l1_error" in err
    assert not out.exists()


def test_extra_column_rejected(tmp_path):
    csv_path = tmp_path / "bad.csv"
    csv_path.write_text("dim,l1_error,notes\n1,0.5,x\n")
    with pytest.raises(SchemaError, match="notes"):
        load_table(csv_path, "greens-l1")


def test_empty_file_rejected(tmp_path):
    csv_path = tmp_path / "empty.csv"
    csv_path.write_text("")
    with pytest.raises(SchemaError):
        load_table(csv_path, "greens-l1")


def test_gibbs_sweep_has_both_guide_lines(tmp_path):
    csv_path = write_csv(tmp_path, "gibbs-sweep")
    spec = FigureSpec(kind="gibbs-sweep", inputs=(csv_path,),
                      output=tmp_path / "g.png")
    fig = render(spec)
    labels = [line.get_label() for line in fig.axes[0].lines]
    assert "exp(-d)" in labels
    assert "exp(-2d)" in labels


def test_greens_curve_two_panels(tmp_path):
    csv_path = write_csv(tmp_path, "greens-curve")
    spec = FigureSpec(kind="greens-curve", inputs=(csv_path,),
                      output=tmp_path / "gc.png")
    fig = render(spec)
    assert len(fig.axes) == 2


def test_multiple_inputs_overlay(tmp_path):
    p1 = write_csv(tmp_path / "a", "greens-l1")
    p2 = write_csv(tmp_path / "b", "greens-l1")
    out = tmp_path / "overlay.png"
    code = main(["--kind", "greens-l1", "--in", str(p1), "--in", str(p2),
                 "--out", str(out)])
    assert code == 0


def test_deterministic_overwrite(tmp_path):
    csv_path = write_csv(tmp_path, "greens-l1")
    out = tmp_path / "f.png"
    assert main(["--kind", "greens-l1", "--in", str(csv_path), "--out", str(out)]) == 0
    first = out.read_bytes()
    assert main(["--kind", "greens-l1", "--in", str(csv_path), "--out", str(out)]) == 0
    assert out.read_bytes() == first


def test_table_numeric_accessors(tmp_path):
    t = load_table(write_csv(tmp_path, "greens-l1"), "greens-l1")
    assert len(t) == 4
    assert np.array_equal(t.numeric("dim"), [1, 2, 4, 8])


def test_figure_spec_validation(tmp_path):
    with pytest.raises(ValueError):
        FigureSpec(kind="histogram", inputs=(tmp_path / "x.csv",),
                   output=tmp_path / "x.png")
    with pytest.raises(ValueError):
        FigureSpec(kind="greens-l1", inputs=(), output=tmp_path / "x.png")
