import io
import json
import os
import tempfile
import unittest
import warnings
from contextlib import redirect_stdout, redirect_stderr
from unittest import mock
import numpy as np
from kraupy import cli
from kraupy.channel import (identity_channel, pauli_channel, depolarizing,
                            amplitude_damping, canonical_kraus)
from kraupy.decompose import generate_random_ru_channel
from kraupy.fileio import (write_json, matrix_to_json, channel_to_dict,
                           povm_to_dict, decomposition_to_dict)
from kraupy.povm import random_povm, povm_from_decomposition


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        status = cli.main(argv)
    return status, out.getvalue()


class TestCli(unittest.TestCase):
    def setUp(self):
        self.folder = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.folder.cleanup()

    def path(self, name):
        return os.path.join(self.folder.name, name)

    def channel_file(self, name, ch):
        fn = self.path(name)
        write_json(channel_to_dict(ch), fn)
        return fn

    def test_analyze_identity(self):
        expected_result = {'rank': 1, 'unital': True, 'tp': True, 'k_low': 1,
                           'k_high': 1, 'h_bound_bits': 0}
        fn = self.channel_file('identity.json', identity_channel(2))
        status, text = run(['analyze', fn])
        self.assertEqual(status, cli.EXIT_OK)
        self.assertEqual(json.loads(text), expected_result)

    def test_analyze_depolarizing(self):
        fn = self.channel_file('depolarizing.json', depolarizing(2))
        status, text = run(['analyze', fn])
        result = json.loads(text)
        self.assertEqual(result['rank'], 4)
        self.assertEqual(result['k_high'], 16)
        self.assertAlmostEqual(result['h_bound_bits'], 4.0)

    def test_analyze_not_unital(self):
        fn = self.channel_file('damping.json', amplitude_damping(0.5))
        status, text = run(['analyze', fn])
        self.assertEqual(status, cli.EXIT_OK)
        result = json.loads(text)
        self.assertFalse(result['unital'])
        self.assertIn('not random-unitary', result['note'])

    def test_stdin(self):
        text = json.dumps(channel_to_dict(identity_channel(3)),
                          default=float)
        with mock.patch('sys.stdin', io.StringIO(text)):
            status, out = run(['analyze', '-'])
        self.assertEqual(status, cli.EXIT_OK)
        self.assertEqual(json.loads(out)['rank'], 1)

    def test_malformed(self):
        fn = self.path('broken.json')
        with open(fn, 'w') as file:
            file.write('{"d_in": 2,')
        self.assertEqual(run(['analyze', fn])[0], cli.EXIT_MALFORMED)
        self.assertEqual(run(['analyze', self.path('missing.json')])[0],
                         cli.EXIT_MALFORMED)
        with self.assertRaises(SystemExit) as exit_info:
            run(['analyze'])
        self.assertEqual(exit_info.exception.code, 2)

    def test_invariant_violation(self):
        fn = self.path('not_tp.json')
        write_json({'d_in': 2, 'd_out': 2,
                    'kraus': [matrix_to_json(2 * np.eye(2))]}, fn)
        self.assertEqual(run(['analyze', fn])[0], cli.EXIT_INVARIANT)

    def test_decompose_qubit(self):
        fn = self.channel_file('pauli.json', pauli_channel([0.5, 0.5, 0, 0]))
        status, text = run(['decompose', fn])
        self.assertEqual(status, cli.EXIT_OK)
        result = json.loads(text)
        self.assertEqual(result['status'], 'found')
        self.assertEqual(result['K'], 2)
        self.assertTrue(result['bounds']['ok'])

    def test_decompose_generated(self):
        fn = self.path('gen.json')
        self.assertEqual(run(['gen', '--d', '3', '--k', '2', '--seed', '5',
                              '--out', fn])[0], cli.EXIT_OK)
        status, text = run(['decompose', fn, '--max-restarts', '5',
                            '--seed', '1'])
        self.assertEqual(status, cli.EXIT_OK)
        result = json.loads(text)
        self.assertLessEqual(result['K'], 4)
        self.assertLess(result['residual'], 1e-6)
        self.assertTrue(result['bounds']['ok'])

    def test_decompose_not_unital(self):
        fn = self.channel_file('damping.json', amplitude_damping(0.5))
        status, text = run(['decompose', fn])
        self.assertEqual(status, cli.EXIT_NOT_UNITAL)
        self.assertEqual(json.loads(text)['status'], 'not_unital')

    def test_decompose_not_found(self):
        ch, _ = generate_random_ru_channel(3, 3, seed=2)
        fn = self.channel_file('hard.json', ch)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            status, text = run(['decompose', fn, '--max-restarts', '1',
                                '--max-iters', '1', '--schedule', '3,4'])
        self.assertEqual(status, cli.EXIT_NOT_FOUND)
        self.assertEqual(len(json.loads(text)['objective_trace']), 2)

    def test_bad_schedule(self):
        fn = self.channel_file('hard.json',
                               generate_random_ru_channel(3, 2, seed=1)[0])
        self.assertEqual(run(['decompose', fn, '--schedule', '1,2'])[0],
                         cli.EXIT_MALFORMED)

    def test_povm_reduce(self):
        ch = pauli_channel([0.5, 0.5, 0, 0])
        canonical = canonical_kraus(ch)
        fn_ch = self.channel_file('canonical.json', canonical)
        ch_gen, dec = generate_random_ru_channel(2, 2, seed=3)
        fn_povm = self.path('povm.json')
        write_json(povm_to_dict(random_povm(2, 5, seed=1)), fn_povm)
        self.assertEqual(run(['povm-reduce', fn_ch, fn_povm])[0],
                         cli.EXIT_DICE)

        canonical = canonical_kraus(ch_gen)
        fn_ch = self.channel_file('generated.json', canonical)
        write_json(povm_to_dict(povm_from_decomposition(canonical, dec)),
                   fn_povm)
        status, text = run(['povm-reduce', fn_ch, fn_povm])
        self.assertEqual(status, cli.EXIT_OK)
        result = json.loads(text)
        self.assertEqual(len(result['probs']), 2)
        self.assertTrue(result['bounds']['ok'])

    def test_povm_reduce_generated_file(self):
        fn = self.path('gen.json')
        run(['gen', '--d', '2', '--k', '2', '--seed', '3', '--out', fn])
        ch, dec = generate_random_ru_channel(2, 2, seed=3)
        fn_povm = self.path('povm.json')
        write_json(povm_to_dict(povm_from_decomposition(canonical_kraus(ch),
                                                        dec)), fn_povm)
        status, text = run(['povm-reduce', fn, fn_povm])
        self.assertEqual(status, cli.EXIT_OK)
        result = json.loads(text)
        np.testing.assert_allclose(sorted(result['probs']), sorted(dec.probs),
                                   atol=1e-8)

    def test_simulate(self):
        fn = self.path('gen.json')
        run(['gen', '--d', '2', '--k', '3', '--seed', '8', '--out', fn])
        status, text = run(['simulate-correct', fn, self.path('gen_dec.json'),
                            '--trials', '25', '--seed', '4'])
        self.assertEqual(status, cli.EXIT_OK)
        result = json.loads(text)
        self.assertEqual(result['n_trials'], 25)
        self.assertGreaterEqual(result['worst_fidelity'], 1 - 1e-9)

    def test_simulate_wrong_decomposition(self):
        ch, _ = generate_random_ru_channel(2, 2, seed=4)
        _, other = generate_random_ru_channel(2, 2, seed=5)
        fn_ch = self.channel_file('channel.json', ch)
        fn_dec = self.path('dec.json')
        write_json(decomposition_to_dict(other), fn_dec)
        self.assertEqual(run(['simulate-correct', fn_ch, fn_dec])[0],
                         cli.EXIT_INVARIANT)

    def test_gen_deterministic(self):
        first = run(['gen', '--d', '3', '--k', '4', '--seed', '11'])[1]
        second = run(['gen', '--d', '3', '--k', '4', '--seed', '11'])[1]
        self.assertEqual(first, second)
        result = json.loads(first)
        self.assertEqual(len(result['decomposition']['probs']), 4)
        self.assertEqual(result['channel']['d_in'], 3)

    def test_gen_out_of_range(self):
        self.assertEqual(run(['gen', '--d', '2', '--k', '5'])[0],
                         cli.EXIT_MALFORMED)


if __name__ == '__main__':
    unittest.main()
