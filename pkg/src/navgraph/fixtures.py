"""Shipped example graphs.

``stacked_bar`` and ``us_states`` are produced by the generic structure
builders; the set-diagram and parallel-vectors graphs are authored
node-by-node (their shapes came out of a bespoke design pass, not a
generic builder). All constructors are pure, so regenerating a fixture
file is byte-stable.
"""

from __future__ import annotations

from .builders import (
    AdjacencySpec,
    DualHierarchySpec,
    build_adjacency,
    build_dual_hierarchy,
    standard_rules,
    standard_universal_edges,
    EXIT_EDGE_ID,
    RETURN_EDGE_ID,
)
from .graph import Graph, build_graph

CONTESTS = ["BPL", "FA Cup", "CL"]
TEAMS = ["Arsenal", "Chelsea", "Liverpool", "Manchester United"]

# Trophy counts per (contest, team), mirroring a well-known stacked column
# demo dataset for these clubs.
TROPHIES = {
    "BPL": {"Arsenal": 3, "Chelsea": 5, "Liverpool": 1, "Manchester United": 13},
    "FA Cup": {"Arsenal": 14, "Chelsea": 8, "Liverpool": 8, "Manchester United": 12},
    "CL": {"Arsenal": 0, "Chelsea": 2, "Liverpool": 6, "Manchester United": 3},
}

# Chart frame used for the traced geometry (pixels, y grows downward).
CHART_W, CHART_H = 600, 400
PLOT_LEFT, PLOT_RIGHT, PLOT_TOP, PLOT_BOTTOM = 60, 580, 20, 360
BAR_WIDTH = 78


def _bar_layout():
    """Pixel rects for every stacked segment: {(contest, team): (x, y, w, h)}."""
    slot = (PLOT_RIGHT - PLOT_LEFT) / len(TEAMS)
    max_total = max(sum(TROPHIES[c][t] for c in CONTESTS) for t in TEAMS)
    scale = (PLOT_BOTTOM - PLOT_TOP) / max_total
    rects = {}
    for j, team in enumerate(TEAMS):
        x = round(PLOT_LEFT + j * slot + (slot - BAR_WIDTH) / 2, 2)
        y = PLOT_BOTTOM
        for contest in CONTESTS:
            h = round(TROPHIES[contest][team] * scale, 2)
            y = round(y - h, 2)
            rects[(contest, team)] = (x, y, BAR_WIDTH, h)
    return rects


def stacked_bar() -> Graph:
    """Dual-hierarchy schema over the stacked-bar raster chart.

    Contests stack vertically (circular), teams run along the x axis
    (non-circular). Enter drills toward the first team's column; KeyL
    climbs the contest tree, Backspace climbs the team/axis tree.
    """
    rects = _bar_layout()
    node_data = {
        "root": {
            "semantics": {"label": "Club trophies by contest",
                          "description": "Stacked bar chart. 3 contests across 4 teams."},
            "render": {"kind": "rect", "x": 0, "y": 0, "w": CHART_W, "h": CHART_H},
        },
        "legend": {"render": {"kind": "rect", "x": 180, "y": 2, "w": 240, "h": 16}},
        "x-axis": {"render": {"kind": "rect", "x": PLOT_LEFT, "y": PLOT_BOTTOM + 2,
                              "w": PLOT_RIGHT - PLOT_LEFT, "h": 24}},
    }
    for i, contest in enumerate(CONTESTS):
        path = "".join(
            f"M{x} {y}h{w}v{h}h-{w}Z" for (x, y, w, h) in
            (rects[(contest, team)] for team in TEAMS))
        node_data[contest] = {
            "render": {"kind": "path", "d": path},
            "datum": {"total": sum(TROPHIES[contest].values())},
        }
    for j, team in enumerate(TEAMS):
        total = sum(TROPHIES[c][team] for c in CONTESTS)
        top = min(rects[(c, team)][1] for c in CONTESTS)
        x = rects[(CONTESTS[0], team)][0]
        node_data[team] = {
            "render": {"kind": "rect", "x": x, "y": top, "w": BAR_WIDTH,
                       "h": round(PLOT_BOTTOM - top, 2)},
            "datum": {"total": total},
        }
    for i, contest in enumerate(CONTESTS):
        for j, team in enumerate(TEAMS):
            value = TROPHIES[contest][team]
            x, y, w, h = rects[(contest, team)]
            node_data[f"{contest}/{team}"] = {
                "semantics": {"description":
                              f"{value} trophies. Stack {i + 1} of {len(CONTESTS)}, "
                              f"column {j + 1} of {len(TEAMS)}."},
                "render": {"kind": "rect", "x": x, "y": y, "w": w, "h": h},
                "datum": {"value": value},
            }
    return build_dual_hierarchy(DualHierarchySpec(
        dim_a=CONTESTS,
        dim_b=TEAMS,
        dim_a_label="Contest",
        dim_b_label="Team",
        circular_within_stack=True,
        extra_bindings={
            "down": ("swipe-down",), "up": ("swipe-up",),
            "right": ("swipe-right",), "left": ("swipe-left",),
        },
        node_data=node_data,
        exit_target="#chart-exit",
    ))


# ---------------------------------------------------------------------------
# US states adjacency

US_STATE_NEIGHBORS = {
    "Alabama": ("Florida", "Georgia", "Mississippi", "Tennessee"),
    "Alaska": (),
    "Arizona": ("California", "Nevada", "New Mexico", "Utah"),
    "Arkansas": ("Louisiana", "Mississippi", "Missouri", "Oklahoma", "Tennessee", "Texas"),
    "California": ("Arizona", "Nevada", "Oregon"),
    "Colorado": ("Kansas", "Nebraska", "New Mexico", "Oklahoma", "Utah", "Wyoming"),
    "Connecticut": ("Massachusetts", "New York", "Rhode Island"),
    "Delaware": ("Maryland", "New Jersey", "Pennsylvania"),
    "Florida": ("Alabama", "Georgia"),
    "Georgia": ("Alabama", "Florida", "North Carolina", "South Carolina", "Tennessee"),
    "Hawaii": (),
    "Idaho": ("Montana", "Nevada", "Oregon", "Utah", "Washington", "Wyoming"),
    "Illinois": ("Indiana", "Iowa", "Kentucky", "Missouri", "Wisconsin"),
    "Indiana": ("Illinois", "Kentucky", "Michigan", "Ohio"),
    "Iowa": ("Illinois", "Minnesota", "Missouri", "Nebraska", "South Dakota", "Wisconsin"),
    "Kansas": ("Colorado", "Missouri", "Nebraska", "Oklahoma"),
    "Kentucky": ("Illinois", "Indiana", "Missouri", "Ohio", "Tennessee", "Virginia",
                 "West Virginia"),
    "Louisiana": ("Arkansas", "Mississippi", "Texas"),
    "Maine": ("New Hampshire",),
    "Maryland": ("Delaware", "Pennsylvania", "Virginia", "West Virginia"),
    "Massachusetts": ("Connecticut", "New Hampshire", "New York", "Rhode Island", "Vermont"),
    "Michigan": ("Indiana", "Ohio", "Wisconsin"),
    "Minnesota": ("Iowa", "North Dakota", "South Dakota", "Wisconsin"),
    "Mississippi": ("Alabama", "Arkansas", "Louisiana", "Tennessee"),
    "Missouri": ("Arkansas", "Illinois", "Iowa", "Kansas", "Kentucky", "Nebraska",
                 "Oklahoma", "Tennessee"),
    "Montana": ("Idaho", "North Dakota", "South Dakota", "Wyoming"),
    "Nebraska": ("Colorado", "Iowa", "Kansas", "Missouri", "South Dakota", "Wyoming"),
    "Nevada": ("Arizona", "California", "Idaho", "Oregon", "Utah"),
    "New Hampshire": ("Maine", "Massachusetts", "Vermont"),
    "New Jersey": ("Delaware", "New York", "Pennsylvania"),
    "New Mexico": ("Arizona", "Colorado", "Oklahoma", "Texas"),
    "New York": ("Connecticut", "Massachusetts", "New Jersey", "Pennsylvania", "Vermont"),
    "North Carolina": ("Georgia", "South Carolina", "Tennessee", "Virginia"),
    "North Dakota": ("Minnesota", "Montana", "South Dakota"),
    "Ohio": ("Indiana", "Kentucky", "Michigan", "Pennsylvania", "West Virginia"),
    "Oklahoma": ("Arkansas", "Colorado", "Kansas", "Missouri", "New Mexico", "Texas"),
    "Oregon": ("California", "Idaho", "Nevada", "Washington"),
    "Pennsylvania": ("Delaware", "Maryland", "New Jersey", "New York", "Ohio",
                     "West Virginia"),
    "Rhode Island": ("Connecticut", "Massachusetts"),
    "South Carolina": ("Georgia", "North Carolina"),
    "South Dakota": ("Iowa", "Minnesota", "Montana", "Nebraska", "North Dakota", "Wyoming"),
    "Tennessee": ("Alabama", "Arkansas", "Georgia", "Kentucky", "Mississippi", "Missouri",
                  "North Carolina", "Virginia"),
    "Texas": ("Arkansas", "Louisiana", "New Mexico", "Oklahoma"),
    "Utah": ("Arizona", "Colorado", "Idaho", "Nevada", "Wyoming"),
    "Vermont": ("Massachusetts", "New Hampshire", "New York"),
    "Virginia": ("Kentucky", "Maryland", "North Carolina", "Tennessee", "West Virginia"),
    "Washington": ("Idaho", "Oregon"),
    "West Virginia": ("Kentucky", "Maryland", "Ohio", "Pennsylvania", "Virginia"),
    "Wisconsin": ("Illinois", "Iowa", "Michigan", "Minnesota"),
    "Wyoming": ("Colorado", "Idaho", "Montana", "Nebraska", "South Dakota", "Utah"),
}


def us_state_borders() -> list[tuple[str, str]]:
    """Unique border pairs, alphabetical, symmetry-checked."""
    for state, neighbors in US_STATE_NEIGHBORS.items():
        for other in neighbors:
            assert state in US_STATE_NEIGHBORS[other], f"asymmetric border {state}/{other}"
    pairs = {tuple(sorted((a, b)))
             for a, neighbors in US_STATE_NEIGHBORS.items() for b in neighbors}
    return sorted(pairs)


def us_states() -> Graph:
    """Adjacency graph of the 50 US states under a single root node."""
    regions = sorted(US_STATE_NEIGHBORS)
    return build_adjacency(AdjacencySpec(
        region_ids=regions,
        borders=us_state_borders(),
        root_id="United States",
        node_data={"United States": {
            "semantics": {"label": "United States",
                          "description": "State adjacency map. 50 states."}}},
    ))


# ---------------------------------------------------------------------------
# Set diagram (two intersecting sets, three semantic levels)


def set_diagram() -> Graph:
    """Root level, inclusion level (left-to-right, not circular), and the
    exclusive portions reached by drilling into a set."""
    lens_top, lens_bottom = 96.08, 303.92
    nodes = [
        {"id": "diagram",
         "semantics": {"role": "figure", "label": "Set diagram",
                       "description": "Two intersecting sets. 3 levels."},
         "render": {"kind": "rect", "x": 0, "y": 0, "w": 520, "h": 400}},
        {"id": "Set A",
         "semantics": {"role": "group", "label": "Set A",
                       "description": "Set. 1 of 3 at inclusion level."},
         "render": {"kind": "path",
                    "d": "M80 200A120 120 0 1 0 320 200A120 120 0 1 0 80 200Z"}},
        {"id": "A and B",
         "semantics": {"role": "group", "label": "A and B",
                       "description": "Intersection of Set A and Set B. "
                                      "2 of 3 at inclusion level."},
         "render": {"kind": "path",
                    "d": f"M260 {lens_top}A120 120 0 0 1 260 {lens_bottom}"
                         f"A120 120 0 0 1 260 {lens_top}Z"}},
        {"id": "Set B",
         "semantics": {"role": "group", "label": "Set B",
                       "description": "Set. 3 of 3 at inclusion level."},
         "render": {"kind": "path",
                    "d": "M200 200A120 120 0 1 0 440 200A120 120 0 1 0 200 200Z"}},
        {"id": "A only",
         "semantics": {"role": "image", "label": "A only",
                       "description": "Portion of Set A excluding Set B."},
         "render": {"kind": "path",
                    "d": f"M260 {lens_top}A120 120 0 1 0 260 {lens_bottom}"
                         f"A120 120 0 0 0 260 {lens_top}Z"}},
        {"id": "B only",
         "semantics": {"role": "image", "label": "B only",
                       "description": "Portion of Set B excluding Set A."},
         "render": {"kind": "path",
                    "d": f"M260 {lens_top}A120 120 0 1 1 260 {lens_bottom}"
                         f"A120 120 0 0 1 260 {lens_top}Z"}},
    ]
    rules = {
        "drill": {"direction": "toward_target", "bindings": ["Enter"]},
        "right": {"direction": "toward_target", "bindings": ["ArrowRight"]},
        "left": {"direction": "toward_source", "bindings": ["ArrowLeft"]},
        "up": {"direction": "toward_target", "bindings": ["Escape", "Backspace"]},
        **standard_rules(exit_bindings=()),
    }
    sib = ["right", "left"]
    edges = [
        {"id": "drill-root", "source": {"literal": "diagram"},
         "target": {"literal": "Set A"}, "rules": ["drill"]},
        {"id": "sib-a", "source": {"literal": "Set A"},
         "target": {"literal": "A and B"}, "rules": sib},
        {"id": "sib-ab", "source": {"literal": "A and B"},
         "target": {"literal": "Set B"}, "rules": sib},
        {"id": "drill-a", "source": {"literal": "Set A"},
         "target": {"literal": "A only"}, "rules": ["drill"]},
        {"id": "drill-b", "source": {"literal": "Set B"},
         "target": {"literal": "B only"}, "rules": ["drill"]},
        {"id": "up-a", "source": {"literal": "Set A"},
         "target": {"literal": "diagram"}, "rules": ["up"]},
        {"id": "up-ab", "source": {"literal": "A and B"},
         "target": {"literal": "diagram"}, "rules": ["up"]},
        {"id": "up-b", "source": {"literal": "Set B"},
         "target": {"literal": "diagram"}, "rules": ["up"]},
        {"id": "up-a-only", "source": {"literal": "A only"},
         "target": {"literal": "Set A"}, "rules": ["up"]},
        {"id": "up-b-only", "source": {"literal": "B only"},
         "target": {"literal": "Set B"}, "rules": ["up"]},
    ] + standard_universal_edges()
    return build_graph(nodes, edges, rules,
                       universal_edges=(EXIT_EDGE_ID, RETURN_EDGE_ID), entry="diagram")


# ---------------------------------------------------------------------------
# Parallel vectors diagram


def parallel_vectors() -> Graph:
    """Vectors-and-sums group beside a parallel-equations group; equations
    pair off with the vector they parallel. Spatial order, not circular."""
    nodes = [
        {"id": "diagram",
         "semantics": {"role": "figure", "label": "Parallel vectors diagram",
                       "description": "Vectors and their parallel equations. 2 groups."},
         "render": {"kind": "rect", "x": 0, "y": 0, "w": 560, "h": 360}},
        {"id": "vectors",
         "semantics": {"role": "group", "label": "Vectors",
                       "description": "Each vector and vector sum. Group 1 of 2."},
         "render": {"kind": "rect", "x": 20, "y": 40, "w": 300, "h": 280}},
        {"id": "parallels",
         "semantics": {"role": "group", "label": "Parallel equations",
                       "description": "Sub-equations for each parallel vector. Group 2 of 2."},
         "render": {"kind": "rect", "x": 340, "y": 40, "w": 200, "h": 280}},
        {"id": "vector u",
         "semantics": {"role": "image", "label": "Vector u",
                       "description": "Vector. 1 of 3."},
         "render": {"kind": "path", "d": "M60 280L180 160"}},
        {"id": "vector v",
         "semantics": {"role": "image", "label": "Vector v",
                       "description": "Vector. 2 of 3."},
         "render": {"kind": "path", "d": "M60 280L220 250"}},
        {"id": "vector u plus v",
         "semantics": {"role": "image", "label": "Vector u plus v",
                       "description": "Vector sum. 3 of 3."},
         "render": {"kind": "path", "d": "M60 280L280 130"}},
        {"id": "equation w",
         "semantics": {"role": "group", "label": "w = 2u",
                       "description": "Sub-equation. 1 of 2."},
         "render": {"kind": "rect", "x": 350, "y": 80, "w": 180, "h": 40}},
        {"id": "equation z",
         "semantics": {"role": "group", "label": "z = 3v",
                       "description": "Sub-equation. 2 of 2."},
         "render": {"kind": "rect", "x": 350, "y": 160, "w": 180, "h": 40}},
        {"id": "w parallel u",
         "semantics": {"role": "text", "label": "w is parallel to u",
                       "description": "Pairs the sub-equation with vector u."},
         "render": {"kind": "rect", "x": 350, "y": 120, "w": 180, "h": 24}},
        {"id": "z parallel v",
         "semantics": {"role": "text", "label": "z is parallel to v",
                       "description": "Pairs the sub-equation with vector v."},
         "render": {"kind": "rect", "x": 350, "y": 200, "w": 180, "h": 24}},
    ]
    rules = {
        "drill": {"direction": "toward_target", "bindings": ["Enter"]},
        "right": {"direction": "toward_target", "bindings": ["ArrowRight"]},
        "left": {"direction": "toward_source", "bindings": ["ArrowLeft"]},
        "up": {"direction": "toward_target", "bindings": ["Escape", "Backspace"]},
        **standard_rules(exit_bindings=()),
    }
    sib = ["right", "left"]
    edges = [
        {"id": "drill-root", "source": {"literal": "diagram"},
         "target": {"literal": "vectors"}, "rules": ["drill"]},
        {"id": "sib-groups", "source": {"literal": "vectors"},
         "target": {"literal": "parallels"}, "rules": sib},
        {"id": "up-vectors", "source": {"literal": "vectors"},
         "target": {"literal": "diagram"}, "rules": ["up"]},
        {"id": "up-parallels", "source": {"literal": "parallels"},
         "target": {"literal": "diagram"}, "rules": ["up"]},
        {"id": "drill-vectors", "source": {"literal": "vectors"},
         "target": {"literal": "vector u"}, "rules": ["drill"]},
        {"id": "sib-u", "source": {"literal": "vector u"},
         "target": {"literal": "vector v"}, "rules": sib},
        {"id": "sib-v", "source": {"literal": "vector v"},
         "target": {"literal": "vector u plus v"}, "rules": sib},
        {"id": "up-u", "source": {"literal": "vector u"},
         "target": {"literal": "vectors"}, "rules": ["up"]},
        {"id": "up-v", "source": {"literal": "vector v"},
         "target": {"literal": "vectors"}, "rules": ["up"]},
        {"id": "up-uv", "source": {"literal": "vector u plus v"},
         "target": {"literal": "vectors"}, "rules": ["up"]},
        {"id": "drill-parallels", "source": {"literal": "parallels"},
         "target": {"literal": "equation w"}, "rules": ["drill"]},
        {"id": "sib-eq", "source": {"literal": "equation w"},
         "target": {"literal": "equation z"}, "rules": sib},
        {"id": "up-eq-w", "source": {"literal": "equation w"},
         "target": {"literal": "parallels"}, "rules": ["up"]},
        {"id": "up-eq-z", "source": {"literal": "equation z"},
         "target": {"literal": "parallels"}, "rules": ["up"]},
        {"id": "drill-eq-w", "source": {"literal": "equation w"},
         "target": {"literal": "w parallel u"}, "rules": ["drill"]},
        {"id": "drill-eq-z", "source": {"literal": "equation z"},
         "target": {"literal": "z parallel v"}, "rules": ["drill"]},
        {"id": "up-pair-w", "source": {"literal": "w parallel u"},
         "target": {"literal": "equation w"}, "rules": ["up"]},
        {"id": "up-pair-z", "source": {"literal": "z parallel v"},
         "target": {"literal": "equation z"}, "rules": ["up"]},
    ] + standard_universal_edges()
    return build_graph(nodes, edges, rules,
                       universal_edges=(EXIT_EDGE_ID, RETURN_EDGE_ID), entry="diagram")


# ---------------------------------------------------------------------------
# Scene-format twin of the stacked bar (extraction demo input)


def stacked_bar_scene() -> dict:
    """The stacked-bar chart expressed as a neutral scene document."""
    rects = _bar_layout()
    marks = []
    for contest in CONTESTS:
        for team in TEAMS:
            x, y, w, h = rects[(contest, team)]
            marks.append({
                "markId": f"mark-{contest}-{team}",
                "markType": "rect",
                "bounds": {"x": x, "y": y, "w": w, "h": h},
                "datum": {"contest": contest, "team": team,
                          "value": TROPHIES[contest][team]},
            })
    return {
        "title": "Club trophies by contest",
        "marks": marks,
        "axes": [{"axisId": "axis-x", "orientation": "bottom", "title": "Team",
                  "ticks": TEAMS}],
        "legend": {"legendId": "legend",
                   "entries": [{"id": f"legend-{c}", "label": c} for c in CONTESTS]},
    }
