import os
import sys

from flask import Flask, jsonify, request
from flask_cors import CORS

sys.path.insert(1, os.path.join(sys.path[0], ".."))

from src.models.exceptions import KnotAlgError
from src.pipeline.knot_algebra_pipeline import KnotAlgebraPipeline
from src.pipeline.run_config import RunConfig

app = Flask(__name__)
CORS(app)


def run_command(command: str):
    """
    Build a RunConfig from the JSON body and run one pipeline block.

    Args:
        command (str): parse, quiver, algebra, check or grading.

    Returns:
        Response: the JSON report, or {"error": message} with status 400.
    """
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        return jsonify({"error": "request body must be a JSON object"}), 400
    # files on the server side are not exposed
    data = {key: value for key, value in data.items() if key not in ("file", "output")}
    if str(data.get("tau") or "").strip().startswith("file:"):
        return jsonify({"error": "tau files are not accepted by the service, send const:<v> or alpha-length"}), 400
    try:
        config = RunConfig.from_mapping(data)
        report = KnotAlgebraPipeline(config).run(command)
    except KnotAlgError as e:
        app.logger.info("%s request rejected: %s", command, e)
        return jsonify({"error": str(e)}), 400
    return jsonify(report)


@app.route("/diagrams", methods=["GET"])
def diagram_list():
    """
    List the builtin diagrams.

    Returns:
        dict: schema version and one record per builtin (name, c, n_D, writhe, genus, pd, description).
    """
    return jsonify(KnotAlgebraPipeline.table_report())


@app.route("/diagram", methods=["POST"])
def diagram_detail():
    """
    Parse a diagram given as {"pd": ...}, {"gauss": ...} or {"builtin": ...}.

    Returns:
        dict: crossing count, writhe, genus and the diagram JSON.
    """
    return run_command("parse")


@app.route("/quiver", methods=["POST"])
def quiver_detail():
    return run_command("quiver")


@app.route("/algebra", methods=["POST"])
def algebra_detail():
    """
    Build the algebra; the body may also carry field, q, tau and variant.

    Returns:
        dict: dimension, basis, Cartan matrix, radical series and tau table.
    """
    return run_command("algebra")


@app.route("/check", methods=["POST"])
def check_detail():
    return run_command("check")


@app.route("/grading", methods=["POST"])
def grading_detail():
    """
    Wirtinger presentation, arrow degrees and the homogeneity and connectedness reports. Budgets are taken from
    rep_degree_max, search_depth, conjugator_max and max_states.
    """
    return run_command("grading")


if __name__ == "__main__":
    app.run(host="0.0.0.0", debug=True)
