"""navgraph: an accessibility-centered navigation-graph engine.

Build a node-edge graph (by hand, with a structure builder, or by
ingesting a chart scene), then drive a focus session over it from any
input modality. Structure, input handling, and rendering are separate,
composable layers.
"""

from . import builders as builders  # registers the neighbor-ring resolvers
from .builders import (
    AdjacencySpec,
    DualHierarchySpec,
    ListSpec,
    TreeSpec,
    build_adjacency,
    build_dual_hierarchy,
    build_list,
    build_tree,
)
from .engine import FocusState, MoveResult, current_node, enter, move, undo
from .extraction import ExtractionOptions, describe_nodes, extract_nodes, infer_edges, ingest
from .graph import (
    EXIT_ID,
    Edge,
    Endpoint,
    Graph,
    Node,
    ResolverContext,
    Rule,
    Semantics,
    applicable_edges,
    build_graph,
    deserialize,
    load,
    register_resolver,
    resolve_endpoint,
    save,
    serialize,
    validate,
)
from .inputs import BindingTable, default_bindings, dispatch, parse_command, remap
from .render import RenderPlan, describe, plan_render

__version__ = "0.1.0"
