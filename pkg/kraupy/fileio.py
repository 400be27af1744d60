#!/usr/bin/env python3

"""
Kraupy - Python Random-Unitary Channel Package
FileIO Module

JSON formats (complex numbers are always [re, im] pairs, matrices are lists
of rows):
    channel         {"d_in": d, "d_out": d, "kraus": [matrix, ...]}
                    or {"d_in": d, "d_out": d, "choi": matrix}
    povm            {"r": r, "vectors": [[[re, im], ...], ...]}
    decomposition   {"probs": [...], "unitaries": [matrix, ...]}
A file written by `kraupy gen` without --out, {"channel": ...,
"decomposition": ...}, is accepted wherever a channel is read.

Floats are written with 17 significant digits so that identical results
give byte-identical files.
"""

import json
import math
import sys
import numpy as np
from kraupy.constants import default_tol
from kraupy.channel import KrausChannel, ChoiOperator, choi_to_canonical_kraus
from kraupy.decompose import RuDecomposition
from kraupy.errors import DimensionError
from kraupy.povm import RankOnePovm


def read_json(fn):
    """
    Parse a JSON file; '-' reads standard input
    :param fn: file name or '-'
    :return: parsed object
    """
    if fn == '-':
        return json.load(sys.stdin)
    with open(fn, 'r') as file:
        return json.load(file)


def _number(value):
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if not math.isfinite(value):
        return 'null'
    return '%.17g' % value


def dumps(obj, indent=0):
    """
    Deterministic JSON text: fixed key order (insertion), floats with 17
    significant digits, numpy scalars and arrays converted
    :param obj: dict / list / tuple / ndarray / scalar / str / None
    :return: str
    """
    pad = ' ' * (indent + 2)
    if obj is None:
        return 'null'
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return '{}'
        items = [f'{pad}{json.dumps(str(key))}: {dumps(value, indent + 2)}'
                 for key, value in obj.items()]
        return '{\n' + ',\n'.join(items) + '\n' + ' ' * indent + '}'
    if isinstance(obj, (list, tuple)):
        # Flat lists of numbers stay on one line
        nested = (dict, list, tuple, np.ndarray)
        if not any(isinstance(v, nested) for v in obj):
            return '[' + ', '.join(dumps(v) for v in obj) + ']'
        items = [pad + dumps(v, indent + 2) for v in obj]
        return '[\n' + ',\n'.join(items) + '\n' + ' ' * indent + ']'
    return _number(obj)


def write_json(obj, fn=None):
    """
    Write obj as deterministic JSON to fn, or to standard output when fn is
    None or '-'
    """
    text = dumps(obj) + '\n'
    if fn is None or fn == '-':
        sys.stdout.write(text)
    else:
        with open(fn, 'w') as file:
            file.write(text)


def matrix_to_json(mat):
    """Rows of [re, im] pairs"""
    mat = np.asarray(mat, dtype=complex)
    return [[[z.real, z.imag] for z in row] for row in mat]


def matrix_from_json(rows, name='matrix'):
    """
    Complex matrix from rows of [re, im] pairs
    :return: complex ndarray
    """
    arr = np.array(rows, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError(f'{name} must be a list of rows of [re, im] pairs')
    return arr[..., 0] + 1j * arr[..., 1]


def channel_to_dict(ch):
    return {'d_in': ch.d_in,
            'd_out': ch.d_out,
            'kraus': [matrix_to_json(op) for op in ch.ops]}


def channel_from_dict(data, tol=default_tol):
    """
    KrausChannel from its JSON form. A Choi operator is converted to the
    canonical Kraus form.
    :param data: parsed JSON object
    :param tol: ToleranceConfig Object
    :return: KrausChannel Object
    """
    if not isinstance(data, dict):
        raise ValueError('Channel JSON must be an object')
    if 'channel' in data:
        data = data['channel']
    d_in, d_out = int(data['d_in']), int(data['d_out'])
    if 'kraus' in data:
        ch = KrausChannel([matrix_from_json(op, 'Kraus operator')
                           for op in data['kraus']])
        if (ch.d_in, ch.d_out) != (d_in, d_out):
            raise DimensionError(f'Kraus operators are {ch.d_out}x{ch.d_in}, '
                                 f'header says d_out={d_out}, d_in={d_in}')
        return ch
    if 'choi' in data:
        choi = ChoiOperator(matrix_from_json(data['choi'], 'Choi operator'),
                            d_in, d_out, tol)
        return choi_to_canonical_kraus(choi, tol)
    raise ValueError('Channel JSON needs a "kraus" or a "choi" entry')


def povm_to_dict(povm):
    return {'r': povm.r,
            'vectors': [[[z.real, z.imag] for z in v] for v in povm.vectors]}


def povm_from_dict(data):
    if not isinstance(data, dict):
        raise ValueError('POVM JSON must be an object')
    vectors = matrix_from_json(data['vectors'], 'POVM vectors')
    if vectors.shape[1] != int(data['r']):
        raise DimensionError(f'POVM vectors have length {vectors.shape[1]}, '
                             f'header says r={data["r"]}')
    return RankOnePovm(vectors)


def decomposition_to_dict(dec):
    return {'probs': dec.probs,
            'unitaries': [matrix_to_json(u) for u in dec.unitaries]}


def decomposition_from_dict(data, tol=default_tol):
    if not isinstance(data, dict):
        raise ValueError('Decomposition JSON must be an object')
    if 'decomposition' in data:
        data = data['decomposition']
    return RuDecomposition([float(p) for p in data['probs']],
                           [matrix_from_json(u, 'unitary')
                            for u in data['unitaries']], tol)


def search_report_to_dict(report):
    dec = report.decomposition
    return {'status': report.status,
            'K': None if dec is None else len(dec),
            'cardinality_bound_low': report.cardinality_bound_low,
            'cardinality_bound_high': report.cardinality_bound_high,
            'n_elements': report.n_elements,
            'entropy_bits': report.entropy_bits,
            'residual': report.residual,
            'objective_trace': report.objective_trace,
            'decomposition': None if dec is None
            else decomposition_to_dict(dec)}


def correction_report_to_dict(report):
    return {'n_trials': report.n_trials,
            'worst_fidelity': report.worst_fidelity,
            'mean_fidelity': report.mean_fidelity,
            'max_weight_deviation': report.max_weight_deviation,
            'expected_probs': report.expected_probs,
            'outcome_frequencies': report.outcome_frequencies}
