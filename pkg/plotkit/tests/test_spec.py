import csv

import pytest

from plotkit.spec import FigureSpec, PlotkitError, load_frame

from conftest import RHO_HEADER, write_csv


class TestFigureSpec:
    def test_unknown_figure_id(self):
        with pytest.raises(PlotkitError, match="fig9"):
            FigureSpec("fig9", "a.csv", "b.png")

    def test_valid_ids(self):
        for fid in ("fig3", "fig4", "fig5"):
            assert FigureSpec(fid, "a.csv", "b.png").figure_id == fid


class TestLoadFrame:
    def test_missing_file(self, tmp_path):
        spec = FigureSpec("fig3", str(tmp_path / "nope.csv"), "o.png")
        with pytest.raises(PlotkitError, match="not found"):
            load_frame(spec)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(PlotkitError, match="empty"):
            load_frame(FigureSpec("fig3", str(path), "o.png"))

    def test_header_only(self, tmp_path):
        path = write_csv(tmp_path / "h.csv", RHO_HEADER, [])
        with pytest.raises(PlotkitError, match="no data rows"):
            load_frame(FigureSpec("fig3", path, "o.png"))

    def test_missing_column_named(self, rho_csv, tmp_path):
        with open(rho_csv) as fh:
            rows = list(csv.reader(fh))
        drop = rows[0].index("q_max")
        trimmed = [[c for i, c in enumerate(r) if i != drop] for r in rows]
        path = write_csv(tmp_path / "t.csv", trimmed[0], trimmed[1:])
        with pytest.raises(PlotkitError, match="q_max"):
            load_frame(FigureSpec("fig3", path, "o.png"))

    def test_wrong_axis(self, n_fl_csv):
        # fig5 shares the solve-sweep schema but expects another axis
        with pytest.raises(PlotkitError, match="axis='lambda_fresh'"):
            load_frame(FigureSpec("fig5", n_fl_csv, "o.png"))

    def test_feasible_parsed_to_bool(self, rho_csv):
        frame = load_frame(FigureSpec("fig3", rho_csv, "o.png"))
        assert frame["feasible"].dtype == bool
        assert frame["feasible"].any() and not frame["feasible"].all()

    def test_bad_feasible_value(self, tmp_path):
        rows = [["rho", 0.5, "aloha", "maybe", 0.1, 1, 1, 1, 1, 1, ""]]
        path = write_csv(tmp_path / "b.csv", RHO_HEADER, rows)
        with pytest.raises(PlotkitError, match="true/false"):
            load_frame(FigureSpec("fig3", path, "o.png"))
