import json
import logging
from collections.abc import Sequence
from typing import Any

from mcp.server import Server
from mcp.types import TextContent, Tool

from .exceptions import HyperdetError
from .hypergraph import DeterminantEngine, parse_matrix
from .hypergraph.models import SignProbe
from .hypergraph.permutations import Permutation
from .report_types import CommandReport

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    filename="hyperdet_debug.log",
    filemode="a",
)
logger = logging.getLogger("hyperdet")
logging.getLogger("mcp.server.lowlevel.server").setLevel(logging.INFO)

_engine: DeterminantEngine | None = None
app = Server("hyperdet")

MATRIX_PROPERTY = {
    "type": "string",
    "description": "Matrix rows, one per line: space-separated -1/0/1 or compact +/-/0 strings",
}
N_PROPERTY = {"type": "integer", "description": "Matrix size n", "minimum": 1}


def get_engine() -> DeterminantEngine:
    """Engine built from the environment on first use."""
    global _engine
    if _engine is None:
        _engine = DeterminantEngine()
    return _engine


def _matrix_tool(name: str, description: str, extra: dict[str, Any] | None = None) -> Tool:
    properties: dict[str, Any] = {"matrix": MATRIX_PROPERTY}
    properties.update(extra or {})
    return Tool(
        name=name,
        description=description,
        inputSchema={"type": "object", "properties": properties, "required": ["matrix"]},
    )


@app.list_tools()
async def list_tools() -> list[Tool]:
    """List the determinant engine tools."""
    return [
        _matrix_tool(
            "hyperdet_det",
            "Exact det(H) and det(L), with det(L) counted over all n^n n! contributors when within budget",
        ),
        _matrix_tool(
            "hyperdet_classes",
            "Edge-monic tail-class tallies and the class-count identities",
            {
                "identifier": {
                    "type": "string",
                    "description": "Optional class identifier in cycle notation or as a 1-based image array, e.g. '(1 2 3)' or '[2,3,1]'",
                },
                "pair": {
                    "type": "string",
                    "description": "Optional second identifier; reports the adjacency-inverse pair between the two classes",
                },
                "transversal": {
                    "type": "boolean",
                    "description": "Reverse every class and check that the reversals form head-equivalence classes",
                    "default": False,
                },
            },
        ),
        _matrix_tool(
            "hyperdet_verify",
            "Check that every non-edge-monic tail class sums to zero, with the transposition pairing audit",
            {
                "general": {
                    "type": "boolean",
                    "description": "Exploratory run on a host that need not be full; reports observations only",
                    "default": False,
                }
            },
        ),
        _matrix_tool(
            "hyperdet_reduce",
            "Standardize, reduce to a {0,1} matrix and check |det H| = 2^(n-1) |det H'|",
        ),
        _matrix_tool(
            "hyperdet_probe",
            "Probe-contributor signs of a standardized matrix with both round trips",
        ),
        Tool(
            name="hyperdet_reconstruct",
            description="Rebuild the standardized matrix from its probe signs",
            inputSchema={
                "type": "object",
                "properties": {
                    "probe": {
                        "type": "string",
                        "description": 'SignProbe JSON: {"n": .., "s1k": [..], "skl": [[k, l, sign], ..], "s1kl": [[k, l, sign], ..]}',
                    }
                },
                "required": ["probe"],
            },
        ),
        Tool(
            name="hyperdet_search",
            description="Maximum |det| over standardized n x n {±1}-matrices, exhaustive or by seeded local search",
            inputSchema={
                "type": "object",
                "properties": {
                    "n": N_PROPERTY,
                    "local": {"type": "boolean", "default": False},
                    "seed": {"type": "integer", "default": 0},
                    "budget": {"type": "integer", "description": "Local search: maximum candidate evaluations"},
                    "objective": {"type": "string", "enum": ["oracle", "classes"], "default": "oracle"},
                },
                "required": ["n"],
            },
        ),
        Tool(
            name="hyperdet_experiment",
            description="Compare uniform probe-sign patterns with the exhaustive maximum at size n",
            inputSchema={"type": "object", "properties": {"n": N_PROPERTY}, "required": ["n"]},
        ),
    ]


def dispatch(name: str, arguments: dict[str, Any]) -> CommandReport:
    """Run one tool synchronously."""
    engine = get_engine()
    if name == "hyperdet_reconstruct":
        probe = SignProbe.model_validate(json.loads(arguments["probe"]))
        return engine.reconstruct(probe)
    if name == "hyperdet_search":
        return engine.search_maxdet(
            int(arguments["n"]),
            local=bool(arguments.get("local", False)),
            seed=int(arguments.get("seed", 0)),
            budget=arguments.get("budget"),
            objective=arguments.get("objective", "oracle"),
        )
    if name == "hyperdet_experiment":
        return engine.experiment(int(arguments["n"]))

    structure = parse_matrix(arguments["matrix"])
    if name == "hyperdet_det":
        return engine.det(structure)
    if name == "hyperdet_classes":
        alpha = arguments.get("identifier")
        beta = arguments.get("pair")
        return engine.classes(
            structure,
            Permutation.parse(alpha, n=structure.size) if alpha else None,
            Permutation.parse(beta, n=structure.size) if beta else None,
            transversal=bool(arguments.get("transversal", False)),
        )
    if name == "hyperdet_verify":
        return engine.verify(structure, general=bool(arguments.get("general", False)))
    if name == "hyperdet_reduce":
        return engine.reduce(structure)
    if name == "hyperdet_probe":
        return engine.probe(structure)

    raise ValueError(f"Unknown tool: {name}")


@app.call_tool()
async def call_tool(name: str, arguments: Any) -> Sequence[TextContent]:
    """Handle tool calls; failures come back as JSON error payloads."""
    try:
        report = dispatch(name, arguments or {})
        result = dict(report.payload)
        result["checks_passed"] = report.checks_passed
        if report.budget_required is not None:
            result["budget_required"] = report.budget_required
        return [TextContent(type="text", text=json.dumps(result, indent=2, sort_keys=True, ensure_ascii=False))]
    except (HyperdetError, ValueError, KeyError) as e:
        logger.error(f"Tool execution error: {str(e)}")
        error: dict[str, Any] = {"error": str(e), "status": "error"}
        if isinstance(e, HyperdetError) and e.details:
            error["details"] = e.details
        return [TextContent(type="text", text=json.dumps(error, indent=2, sort_keys=True, ensure_ascii=False))]


async def main() -> None:
    # Import here to avoid issues with event loops
    from mcp.server.stdio import stdio_server

    async with stdio_server() as (read_stream, write_stream):
        await app.run(read_stream, write_stream, app.create_initialization_options())


if __name__ == "__main__":
    import asyncio

    asyncio.run(main())
