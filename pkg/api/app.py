from flask import Flask
from flask import jsonify
from flask import request
from flask import url_for
from kraupy.constants import SearchConfig
from kraupy.decompose import analyze_channel
from kraupy.decompose import decompose_channel
from kraupy.errors import (RepresentationError, DimensionError,
                           UnsupportedChannelError, PreconditionError,
                           InconsistentDecompositionError, NumericalFailure)
from kraupy.fileio import channel_from_dict
from kraupy.fileio import search_report_to_dict


app = Flask(__name__)

invariant_errors = (RepresentationError, DimensionError,
                    UnsupportedChannelError, PreconditionError,
                    InconsistentDecompositionError, NumericalFailure)


def plain(obj):
    # jsonify cannot serialise numpy values
    if isinstance(obj, dict):
        return {key: plain(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(value) for value in obj]
    if hasattr(obj, 'tolist'):
        return obj.tolist()
    return obj


@app.errorhandler(RepresentationError)
@app.errorhandler(DimensionError)
@app.errorhandler(UnsupportedChannelError)
@app.errorhandler(PreconditionError)
@app.errorhandler(InconsistentDecompositionError)
@app.errorhandler(NumericalFailure)
def handle_invariant_error(err):
    return jsonify({'error': str(err)}), 422


@app.route('/')
def list_routes():
    return str(tuple(url_for(rule.endpoint) for rule in
                     app.url_map.iter_rules() if rule.endpoint != 'static'))


def channel_from_request():
    data = request.get_json(silent=True)
    if data is None:
        return None
    try:
        return channel_from_dict(data)
    except invariant_errors:
        raise
    except (KeyError, TypeError, ValueError):
        return None


@app.route('/analyze', methods=['POST'])
def handle_analyze():
    ch = channel_from_request()
    if ch is None:
        return jsonify({'error': 'malformed channel JSON'}), 400
    return jsonify(plain(analyze_channel(ch))), 200


@app.route('/decompose', methods=['POST'])
def handle_decompose():
    ch = channel_from_request()
    if ch is None:
        return jsonify({'error': 'malformed channel JSON'}), 400
    seed = request.args.get('seed', default=0, type=int)
    restarts = request.args.get('restarts', default=20, type=int)
    try:
        cfg = SearchConfig(restarts=restarts, seed=seed)
    except ValueError as err:
        return jsonify({'error': str(err)}), 400
    report = decompose_channel(ch, cfg)
    return jsonify(plain(search_report_to_dict(report))), 200


if __name__ == '__main__':
    app.run()
