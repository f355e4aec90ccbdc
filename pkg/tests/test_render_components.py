"""
Unit tests for output rendering and verification monitoring
"""

import json
import os
import shutil
import tempfile
import unittest

import numpy as np

from src.finite_ring import ring_by_selector
from src.relations import RelationMatrix
from src.render_components import RenderComponents
from src.verification_monitor import FAIL, PASS, Report, VerificationMonitor


class TestRenderComponents(unittest.TestCase):
    """Test cases for tables, DOT and JSON output"""

    def setUp(self):
        """Set up a small symmetric relation"""
        self.relation = RelationMatrix([4, 5, 7], [4, 5, 7],
                                       [[False, True, True], [True, False, False], [True, False, False]])

    def test_relation_frame(self):
        """Test '+'/'-' cells and flag marks"""
        flags = np.zeros((3, 3), dtype=bool)
        flags[0, 1] = True
        frame = RenderComponents.relation_frame(self.relation, flags)
        self.assertEqual(list(frame.columns), ['4', '5', '7'])
        self.assertEqual(frame.loc['4', '5'], '+!')
        self.assertEqual(frame.loc['5', '7'], '-')

    def test_render_frame_corner(self):
        """Test that the corner symbol heads the table"""
        text = RenderComponents.render_frame(RenderComponents.relation_frame(self.relation), 'x')
        self.assertIn('x', text.splitlines()[1])

    def test_ring_frames(self):
        """Test element names in the ring tables"""
        frames = RenderComponents.ring_frames(ring_by_selector('gf4'))
        self.assertEqual(frames['+'].loc['x', 'x+1'], '1')
        self.assertEqual(frames['x'].loc['x', 'x'], 'x+1')

    def test_export_dot(self):
        """Test node and edge lines"""
        dot = RenderComponents.export_dot(self.relation, 'cube')
        self.assertTrue(dot.startswith('graph cube {'))
        self.assertIn('"4" -- "5";', dot)
        self.assertEqual(dot.count(' -- '), 2)
        self.assertTrue(dot.endswith('}\n'))

    def test_export_dot_rejects_rectangular(self):
        """Test rejection of non-graph relations"""
        with self.assertRaises(ValueError):
            RenderComponents.export_dot(RelationMatrix([1], [2, 3], [[True, False]]))

    def test_export_json(self):
        """Test canonical key order"""
        text = RenderComponents.export_json(Report('cube', PASS, {'b': 1, 'a': 2}))
        self.assertEqual(json.loads(text)['payload'], {'a': 2, 'b': 1})
        self.assertLess(text.index('"command"'), text.index('"payload"'))
        self.assertTrue(text.endswith('\n'))

    def test_summary_lines(self):
        """Test status marks and the closing count"""
        lines = RenderComponents.summary_lines([{'name': 'a', 'passed': True}, {'name': 'b', 'passed': False}])
        self.assertEqual(lines, ['✅ a', '❌ b', '1/2 checks passed'])

    def test_grid_text(self):
        """Test aligned grid output"""
        self.assertEqual(RenderComponents.grid_text([[1, 2, 3], [4, 10, 14]]), '1   2   3\n4   10  14')


class TestVerificationMonitor(unittest.TestCase):
    """Test cases for check recording"""

    def setUp(self):
        """Set up test fixtures"""
        self.monitor = VerificationMonitor('test')
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up test fixtures"""
        shutil.rmtree(self.temp_dir)

    def test_empty_report_passes(self):
        """Test a command without checks"""
        report = self.monitor.build_report()
        self.assertTrue(report.passed)
        self.assertNotIn('checks', report.payload)

    def test_failed_check(self):
        """Test that one failure fails the report"""
        self.monitor.record_check('ok', True)
        self.monitor.record_check('broken', False, {'cells': 3})
        report = self.monitor.build_report()
        self.assertEqual(report.status, FAIL)
        self.assertEqual(report.payload['summary'], {'total_checks': 2, 'passed_checks': 1,
                                                     'failed_checks': ['broken']})
        self.assertEqual(self.monitor.get_check_history()[1]['detail'], {'cells': 3})

    def test_run_check(self):
        """Test recording of report-like results"""
        result = self.monitor.run_check('report', lambda: Report('inner', PASS))
        self.assertTrue(result.passed)
        self.assertTrue(self.monitor.all_passed())
        self.assertEqual(self.monitor.get_check_history()[0]['detail']['command'], 'inner')

    def test_export_report(self):
        """Test writing the report to disk"""
        self.monitor.record_check('ok', True)
        path = self.monitor.export_report(os.path.join(self.temp_dir, 'report.json'))
        with open(path, encoding='utf-8') as f:
            data = json.load(f)
        self.assertEqual(data['status'], PASS)
        self.assertEqual(data['command'], 'test')


if __name__ == '__main__':
    unittest.main()
