import io
import json
import os
import tempfile
import unittest

import numpy as np

from ....harness import SvgStyle, config_from_dict, emit_csv, emit_json, emit_svg, run_sweep
from ....model import ChainParams, echo_curve, momentum_grid, uniform_grid


def sweep_result(lambdas, times, delta=0.1):
    return run_sweep(config_from_dict({"N": 20, "delta": delta, "lambda": lambdas, "time": times}))


class TestEmitCsv(unittest.TestCase):
    """CSV 出力の書式"""

    def test_golden_bytes(self):
        """17 有効桁、LF 改行"""
        result = sweep_result(0.5, {"min": 0.0, "max": 0.1, "step": 0.05}, delta=0.0)
        stream = io.StringIO()
        emit_csv(result, stream)

        self.assertEqual(stream.getvalue(),
                         "lambda,t,L\n"
                         "0.5,0,1\n"
                         "0.5,0.050000000000000003,1\n"
                         "0.5,0.10000000000000001,1\n")

    def test_row_order(self):
        """λ 外側、t 内側"""
        result = sweep_result({"min": 0.9, "max": 1.1, "step": 0.1},
                              {"min": 0.0, "max": 1.0, "step": 0.5}, delta=0.0)
        stream = io.StringIO()
        emit_csv(result, stream)
        lines = stream.getvalue().splitlines()

        self.assertEqual(len(lines), 10)
        self.assertEqual([line.split(",")[1] for line in lines[1:4]], ["0", "0.5", "1"])
        self.assertTrue(all(line.endswith(",1") for line in lines[1:]))
        self.assertEqual(lines[4].split(",")[1], "0")
        self.assertEqual(len({line.split(",")[0] for line in lines[1:]}), 3)

    def test_values_reload_exactly(self):
        result = sweep_result({"min": 0.8, "max": 1.0, "step": 0.1}, {"min": 0.0, "max": 5.0, "step": 0.5})
        stream = io.StringIO()
        emit_csv(result, stream)
        values = [float(line.split(",")[2]) for line in stream.getvalue().splitlines()[1:]]

        np.testing.assert_array_equal(values, result.surface.ravel())

    def test_curve(self):
        params = ChainParams(N=50, lam=0.9, delta=0.1)
        curve = echo_curve(params, momentum_grid(params), uniform_grid(0.0, 1.0, 0.05))
        stream = io.StringIO()
        emit_csv(curve, stream)
        lines = stream.getvalue().splitlines()

        self.assertEqual(len(lines), 22)
        self.assertEqual(lines[1], "0.90000000000000002,0,1")

    def test_writes_file_and_creates_directory(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "nested", "out.csv")
            emit_csv(sweep_result(0.9, {"min": 0.0, "max": 1.0, "step": 0.5}), path)

            with open(path, "rb") as handle:
                data = handle.read()
        self.assertTrue(data.startswith(b"lambda,t,L\n"))
        self.assertNotIn(b"\r", data)

    def test_unwritable_target_names_path(self):
        with tempfile.TemporaryDirectory() as directory:
            blocker = os.path.join(directory, "blocker")
            with open(blocker, "w") as handle:
                handle.write("x")
            target = os.path.join(blocker, "out.csv")

            with self.assertRaises(OSError) as context:
                emit_csv(sweep_result(0.9, {"min": 0.0, "max": 1.0, "step": 0.5}), target)
        self.assertIn("out.csv", str(context.exception))


class TestEmitJson(unittest.TestCase):
    """JSON 出力"""

    def test_sweep_result_loads_back(self):
        result = sweep_result({"min": 0.8, "max": 1.0, "step": 0.1}, {"min": 0.0, "max": 2.0, "step": 0.5})
        stream = io.StringIO()
        emit_json(result, stream)
        payload = json.loads(stream.getvalue())

        self.assertTrue(stream.getvalue().endswith("}\n"))
        np.testing.assert_array_equal(payload["surface"], result.surface)
        np.testing.assert_array_equal(payload["lambda"], result.lambdas)
        self.assertEqual(payload["metadata"]["grid_convention"], "paper")

    def test_plain_dict(self):
        stream = io.StringIO()
        emit_json({"passed": True}, stream)
        self.assertEqual(json.loads(stream.getvalue()), {"passed": True})


class TestEmitSvg(unittest.TestCase):
    """SVG 出力"""

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def _path(self, name):
        return os.path.join(self.directory.name, name)

    def _read(self, path):
        with open(path, "rb") as handle:
            return handle.read()

    def test_surface_is_deterministic(self):
        """同じ入力から同じバイト列"""
        result = sweep_result({"min": 0.8, "max": 1.2, "step": 0.1}, {"min": 0.0, "max": 5.0, "step": 0.25})
        emit_svg(result, self._path("a.svg"))
        emit_svg(result, self._path("b.svg"))

        first = self._read(self._path("a.svg"))
        self.assertEqual(first, self._read(self._path("b.svg")))
        self.assertIn(b"<svg", first)
        self.assertNotIn(b'href="http', first)

    def test_viewport_matches_style(self):
        """viewBox は SvgStyle の幅と高さ"""
        result = sweep_result(0.9, {"min": 0.0, "max": 5.0, "step": 0.25})
        emit_svg(result, self._path("default.svg"))
        emit_svg(result, self._path("small.svg"), SvgStyle(width_px=400, height_px=300))

        default = self._read(self._path("default.svg"))
        small = self._read(self._path("small.svg"))
        self.assertIn(b'width="800pt" height="600pt" viewBox="0 0 800 600"', default)
        self.assertIn(b'viewBox="0 0 400 300"', small)

    def test_single_lambda_surface(self):
        result = sweep_result(0.9, {"min": 0.0, "max": 5.0, "step": 0.25})
        emit_svg(result, self._path("row.svg"))
        self.assertIn(b"<svg", self._read(self._path("row.svg")))

    def test_curve_overlay(self):
        curves = []
        for n_sites in (20, 40):
            params = ChainParams(N=n_sites, lam=0.9, delta=0.1)
            curves.append(echo_curve(params, momentum_grid(params), uniform_grid(0.0, 10.0, 0.05)))
        emit_svg(curves, self._path("curves.svg"), SvgStyle(title="revivals"))
        emit_svg(curves, self._path("again.svg"), SvgStyle(title="revivals"))

        data = self._read(self._path("curves.svg"))
        self.assertEqual(data, self._read(self._path("again.svg")))

    def test_empty_curve_list(self):
        with self.assertRaises(ValueError):
            emit_svg([], self._path("empty.svg"))


if __name__ == '__main__':
    unittest.main()
