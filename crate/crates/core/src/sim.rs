//! Self-stabilizing distributed channel assignment over a unit-disk
//! interference graph, in deterministic synchronous rounds.
//!
//! Each round every node reads a snapshot of its neighbors' channels.
//! Unstable nodes whose unstable neighbors all have larger ids move, taking
//! the smallest channel absent from the snapshot neighborhood. Under
//! `strict_mex` a node is unstable whenever its channel differs from that
//! mex, so fixpoints are exactly greedy (grundy) colorings; under
//! `conflict_only` a node is unstable only while it collides with a
//! neighbor, so fixpoints are exactly proper colorings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::coloring::{verify, Coloring, ColoringKind};
use crate::graph::Graph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    StrictMex,
    ConflictOnly,
}

impl std::str::FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict_mex" => Ok(Rule::StrictMex),
            "conflict_only" => Ok(Rule::ConflictOnly),
            _ => Err(Error::InvalidParameter(format!(
                "unknown rule {s:?} (expected strict_mex or conflict_only)"
            ))),
        }
    }
}

/// Radio node: position in meters, channel >= 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: u64,
    pub x: f64,
    pub y: f64,
    pub channel: usize,
}

/// Network snapshot between rounds. Nodes stay sorted by id; the index of a
/// node in `nodes` is its vertex id in the interference graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetworkState {
    pub range: f64,
    pub round: usize,
    pub nodes: Vec<NodeRecord>,
}

fn check_node(node: &NodeRecord) -> Result<()> {
    if !node.x.is_finite() || !node.y.is_finite() {
        return Err(Error::MalformedScenario(format!(
            "node {} has a non-finite position",
            node.id
        )));
    }
    if node.channel == 0 {
        return Err(Error::MalformedScenario(format!(
            "node {} has channel 0; channels start at 1",
            node.id
        )));
    }
    Ok(())
}

fn check_range(range: f64) -> Result<()> {
    if !range.is_finite() || range < 0.0 {
        return Err(Error::MalformedScenario(format!(
            "radio range must be finite and non-negative, got {range}"
        )));
    }
    Ok(())
}

impl NetworkState {
    pub fn new(mut nodes: Vec<NodeRecord>, range: f64) -> Result<Self> {
        check_range(range)?;
        nodes.sort_by_key(|n| n.id);
        for pair in nodes.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::DuplicateNode(pair[0].id));
            }
        }
        for node in &nodes {
            check_node(node)?;
        }
        Ok(NetworkState {
            range,
            round: 0,
            nodes,
        })
    }

    fn index_of(&self, id: u64) -> Option<usize> {
        self.nodes.binary_search_by_key(&id, |n| n.id).ok()
    }

    pub fn channels(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.channel).collect()
    }
}

/// Unit-disk interference graph: nodes within `range` of each other
/// (inclusive) interfere. Vertex `i` is the i-th node in id order.
pub fn interference_graph(state: &NetworkState) -> Graph {
    let n = state.nodes.len();
    let r2 = state.range * state.range;
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let dx = state.nodes[i].x - state.nodes[j].x;
            let dy = state.nodes[i].y - state.nodes[j].y;
            if dx * dx + dy * dy <= r2 {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

/// Per-round measurements, all taken on the pre-move snapshot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RoundMetrics {
    pub round: usize,
    pub moves: usize,
    pub conflicts: usize,
    /// Channel announcements: one per node per neighbor.
    pub messages: usize,
    pub colors_in_use: usize,
    pub stable: bool,
}

/// Executes one synchronous round, returning the advanced state and the
/// metrics of the round just run.
pub fn step(state: &NetworkState, rule: Rule) -> (NetworkState, RoundMetrics) {
    let g = interference_graph(state);
    let n = state.nodes.len();
    let channels = state.channels();

    // smallest channel not present among the neighbors' snapshot channels
    let mex_of = |v: usize| -> usize {
        let deg = g.degree(v);
        let mut seen = vec![false; deg + 2];
        for &u in g.neighbors(v) {
            if channels[u] <= deg + 1 {
                seen[channels[u]] = true;
            }
        }
        (1..deg + 2).find(|&c| !seen[c]).unwrap()
    };

    let unstable: Vec<bool> = (0..n)
        .map(|v| match rule {
            Rule::StrictMex => channels[v] != mex_of(v),
            Rule::ConflictOnly => g.neighbors(v).iter().any(|&u| channels[u] == channels[v]),
        })
        .collect();

    // unstable nodes move unless an unstable neighbor outranks them; ids are
    // sorted, so index order is id order
    let movers: Vec<usize> = (0..n)
        .filter(|&v| unstable[v] && !g.neighbors(v).iter().any(|&u| u < v && unstable[u]))
        .collect();
    debug_assert!(
        movers
            .iter()
            .all(|&v| movers.iter().all(|&u| u == v || !g.has_edge(u, v))),
        "two adjacent nodes were scheduled to move in the same round"
    );

    let mut next = state.clone();
    for &v in &movers {
        next.nodes[v].channel = mex_of(v);
    }
    next.round = state.round + 1;

    let conflicts = g
        .edges()
        .filter(|&(u, v)| channels[u] == channels[v])
        .count();
    let mut distinct = channels;
    distinct.sort_unstable();
    distinct.dedup();

    let metrics = RoundMetrics {
        round: state.round,
        moves: movers.len(),
        conflicts,
        messages: 2 * g.edge_count(),
        colors_in_use: distinct.len(),
        stable: !unstable.iter().any(|&u| u),
    };
    (next, metrics)
}

/// Topology changes, applied between rounds without advancing the clock.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EventAction {
    Join {
        id: u64,
        x: f64,
        y: f64,
        channel: usize,
    },
    Leave {
        id: u64,
    },
    Move {
        id: u64,
        x: f64,
        y: f64,
    },
    SetRange {
        range: f64,
    },
    /// Re-randomizes every channel uniformly in `1..=max_degree + 2`,
    /// deterministically from the seed, nodes in id order.
    Corrupt {
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopologyEvent {
    #[serde(rename = "round")]
    pub at_round: usize,
    pub action: EventAction,
}

pub fn apply_event(state: &NetworkState, action: &EventAction) -> Result<NetworkState> {
    let mut next = state.clone();
    match *action {
        EventAction::Join { id, x, y, channel } => {
            let node = NodeRecord { id, x, y, channel };
            check_node(&node)?;
            match next.nodes.binary_search_by_key(&id, |n| n.id) {
                Ok(_) => return Err(Error::DuplicateNode(id)),
                Err(pos) => next.nodes.insert(pos, node),
            }
        }
        EventAction::Leave { id } => {
            let pos = next.index_of(id).ok_or(Error::UnknownNode(id))?;
            next.nodes.remove(pos);
        }
        EventAction::Move { id, x, y } => {
            let pos = next.index_of(id).ok_or(Error::UnknownNode(id))?;
            next.nodes[pos].x = x;
            next.nodes[pos].y = y;
            check_node(&next.nodes[pos])?;
        }
        EventAction::SetRange { range } => {
            check_range(range)?;
            next.range = range;
        }
        EventAction::Corrupt { seed } => {
            let delta = interference_graph(state).max_degree();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for node in &mut next.nodes {
                node.channel = rng.random_range(1..=delta + 2);
            }
        }
    }
    Ok(next)
}

/// Reproducible simulation input. `seed` is carried for generators that
/// derive scenarios; the run itself is already deterministic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub range: f64,
    pub rule: Rule,
    pub max_rounds: usize,
    #[serde(default)]
    pub seed: u64,
    pub nodes: Vec<NodeRecord>,
    #[serde(default)]
    pub events: Vec<TopologyEvent>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let scenario: Scenario =
            serde_json::from_str(text).map_err(|e| Error::MalformedScenario(e.to_string()))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization cannot fail")
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_rounds == 0 {
            return Err(Error::MalformedScenario(
                "max_rounds must be at least 1".to_string(),
            ));
        }
        for pair in self.events.windows(2) {
            if pair[0].at_round > pair[1].at_round {
                return Err(Error::MalformedScenario(
                    "events must be sorted by round".to_string(),
                ));
            }
        }
        // surfaces duplicate ids, bad channels, bad range
        NetworkState::new(self.nodes.clone(), self.range)?;
        Ok(())
    }
}

/// How the final channel vector fares as a coloring of the final
/// interference graph. `kind` follows the rule: greedy colorings are the
/// strict-mex fixpoints, proper colorings the conflict-only ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixpointReport {
    pub kind: ColoringKind,
    pub valid: bool,
    pub partial_grundy_valid: bool,
    pub colors_in_use: usize,
}

/// Full simulation result: one metrics row per executed round, plus the
/// fixpoint report when the run converged.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimOutcome {
    pub trace: Vec<RoundMetrics>,
    pub state: NetworkState,
    pub converged: bool,
    pub fixpoint: Option<FixpointReport>,
}

/// Runs the scenario: events fire before the step of their round, and the
/// loop ends once the network is stable with no events left, or at
/// `max_rounds`.
pub fn run(scenario: &Scenario) -> Result<SimOutcome> {
    scenario.validate()?;
    let mut state = NetworkState::new(scenario.nodes.clone(), scenario.range)?;
    let mut trace = Vec::new();
    let mut next_event = 0;
    let mut converged = false;
    while state.round < scenario.max_rounds {
        while next_event < scenario.events.len()
            && scenario.events[next_event].at_round == state.round
        {
            state = apply_event(&state, &scenario.events[next_event].action)?;
            next_event += 1;
        }
        let (next, metrics) = step(&state, scenario.rule);
        let stable = metrics.stable;
        trace.push(metrics);
        state = next;
        if stable && next_event == scenario.events.len() {
            converged = true;
            break;
        }
    }
    let fixpoint = if converged {
        Some(fixpoint_report(&state, scenario.rule)?)
    } else {
        None
    };
    Ok(SimOutcome {
        trace,
        state,
        converged,
        fixpoint,
    })
}

fn fixpoint_report(state: &NetworkState, rule: Rule) -> Result<FixpointReport> {
    let g = interference_graph(state);
    let coloring = Coloring::new(state.channels())?;
    let kind = match rule {
        Rule::StrictMex => ColoringKind::Grundy,
        Rule::ConflictOnly => ColoringKind::Proper,
    };
    let valid = verify(&g, &coloring, kind)?.valid;
    let partial_grundy_valid = verify(&g, &coloring, ColoringKind::PartialGrundy)?.valid;
    let mut distinct = state.channels();
    distinct.sort_unstable();
    distinct.dedup();
    Ok(FixpointReport {
        kind,
        valid,
        partial_grundy_valid,
        colors_in_use: distinct.len(),
    })
}

pub fn trace_csv(trace: &[RoundMetrics]) -> String {
    let mut out = String::from("round,moves,conflicts,messages,colors_in_use,stable\n");
    for m in trace {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            m.round, m.moves, m.conflicts, m.messages, m.colors_in_use, m.stable
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{verify, Coloring, ColoringKind};

    fn triangle(channels: [usize; 3]) -> NetworkState {
        let nodes = (0..3)
            .map(|i| NodeRecord {
                id: i as u64,
                x: i as f64,
                y: 0.0,
                channel: channels[i],
            })
            .collect();
        // range 2 covers all pairwise distances on the line 0,1,2
        NetworkState::new(nodes, 2.0).unwrap()
    }

    #[test]
    fn triangle_stabilizes_in_three_rounds() {
        let scenario = Scenario {
            range: 2.0,
            rule: Rule::StrictMex,
            max_rounds: 9,
            seed: 0,
            nodes: triangle([1, 1, 1]).nodes,
            events: vec![],
        };
        let out = run(&scenario).unwrap();
        assert!(out.converged);
        assert_eq!(out.trace.len(), 3);
        assert_eq!(out.state.channels(), vec![2, 3, 1]);

        let expected = "round,moves,conflicts,messages,colors_in_use,stable\n\
                        0,1,3,6,1,false\n\
                        1,1,1,6,2,false\n\
                        2,0,0,6,3,true\n";
        assert_eq!(trace_csv(&out.trace), expected);

        // strict mex fixpoints are greedy colorings of the interference graph
        let g = interference_graph(&out.state);
        let c = Coloring::new(out.state.channels()).unwrap();
        assert!(verify(&g, &c, ColoringKind::Grundy).unwrap().valid);
        let report = out.fixpoint.unwrap();
        assert_eq!(report.kind, ColoringKind::Grundy);
        assert!(report.valid);
        assert!(report.partial_grundy_valid);
        assert_eq!(report.colors_in_use, 3);
    }

    #[test]
    fn conflict_only_keeps_high_channels() {
        let nodes = vec![
            NodeRecord {
                id: 0,
                x: 0.0,
                y: 0.0,
                channel: 5,
            },
            NodeRecord {
                id: 1,
                x: 1.0,
                y: 0.0,
                channel: 1,
            },
        ];
        let state = NetworkState::new(nodes, 1.5).unwrap();
        let (next, metrics) = step(&state, Rule::ConflictOnly);
        assert!(metrics.stable);
        assert_eq!(next.channels(), vec![5, 1]);

        // the same state is unstable under strict mex
        let (next, metrics) = step(&state, Rule::StrictMex);
        assert!(!metrics.stable);
        assert_eq!(metrics.moves, 1);
        assert_eq!(next.channels(), vec![2, 1]);
    }

    #[test]
    fn conflict_only_fixpoint_is_proper_but_not_always_grundy() {
        let nodes = vec![
            NodeRecord {
                id: 0,
                x: 0.0,
                y: 0.0,
                channel: 3,
            },
            NodeRecord {
                id: 1,
                x: 1.0,
                y: 0.0,
                channel: 1,
            },
        ];
        let scenario = Scenario {
            range: 1.5,
            rule: Rule::ConflictOnly,
            max_rounds: 8,
            seed: 0,
            nodes,
            events: vec![],
        };
        let out = run(&scenario).unwrap();
        assert!(out.converged);
        let g = interference_graph(&out.state);
        let c = Coloring::new(out.state.channels()).unwrap();
        assert!(verify(&g, &c, ColoringKind::Proper).unwrap().valid);
        assert!(!verify(&g, &c, ColoringKind::Grundy).unwrap().valid);
        let report = out.fixpoint.unwrap();
        assert_eq!(report.kind, ColoringKind::Proper);
        assert!(report.valid);
        // channel 3 next to channel 1 leaves class 2 without a witness
        assert!(!report.partial_grundy_valid);
    }

    #[test]
    fn leave_splits_the_path_and_isolated_nodes_settle() {
        let nodes = vec![
            NodeRecord {
                id: 0,
                x: 0.0,
                y: 0.0,
                channel: 1,
            },
            NodeRecord {
                id: 1,
                x: 1.0,
                y: 0.0,
                channel: 2,
            },
            NodeRecord {
                id: 2,
                x: 2.0,
                y: 0.0,
                channel: 1,
            },
        ];
        let scenario = Scenario {
            range: 1.0,
            rule: Rule::StrictMex,
            max_rounds: 10,
            seed: 0,
            nodes,
            events: vec![TopologyEvent {
                at_round: 0,
                action: EventAction::Leave { id: 1 },
            }],
        };
        let out = run(&scenario).unwrap();
        assert!(out.converged);
        assert_eq!(out.trace.len(), 1);
        assert!(out.trace[0].stable);
        assert_eq!(out.trace[0].moves, 0);
        assert_eq!(out.state.channels(), vec![1, 1]);
        assert_eq!(interference_graph(&out.state).edge_count(), 0);
    }

    #[test]
    fn corrupt_is_seed_deterministic_and_in_range() {
        let state = triangle([1, 2, 3]);
        let a = apply_event(&state, &EventAction::Corrupt { seed: 5 }).unwrap();
        let b = apply_event(&state, &EventAction::Corrupt { seed: 5 }).unwrap();
        assert_eq!(a.channels(), b.channels());
        // triangle max degree 2: channels land in 1..=4
        assert!(a.channels().iter().all(|&c| (1..=4).contains(&c)));
        let c = apply_event(&state, &EventAction::Corrupt { seed: 6 }).unwrap();
        // positions and ids undisturbed
        assert_eq!(
            c.nodes.iter().map(|n| n.id).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn join_and_move_events_update_topology() {
        let state = triangle([1, 2, 3]);
        let joined = apply_event(
            &state,
            &EventAction::Join {
                id: 7,
                x: 10.0,
                y: 0.0,
                channel: 1,
            },
        )
        .unwrap();
        assert_eq!(joined.nodes.len(), 4);
        assert_eq!(interference_graph(&joined).degree(3), 0);

        let moved = apply_event(
            &joined,
            &EventAction::Move {
                id: 7,
                x: 2.5,
                y: 0.0,
            },
        )
        .unwrap();
        assert!(interference_graph(&moved).degree(3) > 0);

        let shrunk = apply_event(&state, &EventAction::SetRange { range: 0.5 }).unwrap();
        assert_eq!(interference_graph(&shrunk).edge_count(), 0);

        assert!(matches!(
            apply_event(
                &state,
                &EventAction::Join {
                    id: 0,
                    x: 0.0,
                    y: 0.0,
                    channel: 1
                }
            ),
            Err(Error::DuplicateNode(0))
        ));
        assert!(matches!(
            apply_event(&state, &EventAction::Leave { id: 9 }),
            Err(Error::UnknownNode(9))
        ));
    }

    #[test]
    fn scenario_json_round_trip_and_validation() {
        let text = r#"{
            "range": 1.2,
            "rule": "strict_mex",
            "max_rounds": 20,
            "seed": 3,
            "nodes": [
                {"id": 0, "x": 0.0, "y": 0.0, "channel": 2},
                {"id": 1, "x": 1.0, "y": 0.0, "channel": 2}
            ],
            "events": [
                {"round": 2, "action": {"type": "set_range", "range": 0.4}},
                {"round": 4, "action": {"type": "corrupt", "seed": 11}}
            ]
        }"#;
        let scenario = Scenario::from_json(text).unwrap();
        assert_eq!(scenario.rule, Rule::StrictMex);
        assert_eq!(scenario.events.len(), 2);
        let round_tripped = Scenario::from_json(&scenario.to_json()).unwrap();
        assert_eq!(scenario, round_tripped);
        let out = run(&scenario).unwrap();
        assert!(out.converged);

        let bad_rounds = Scenario {
            max_rounds: 0,
            ..scenario.clone()
        };
        assert!(bad_rounds.validate().is_err());

        let mut bad_events = scenario.clone();
        bad_events.events.reverse();
        assert!(bad_events.validate().is_err());

        let mut bad_channel = scenario.clone();
        bad_channel.nodes[0].channel = 0;
        assert!(bad_channel.validate().is_err());

        let mut dup = scenario;
        dup.nodes[1].id = 0;
        assert!(dup.validate().is_err());

        assert!(Scenario::from_json("{}").is_err());
        assert!(Scenario::from_json("not json").is_err());
    }

    #[test]
    fn pending_events_defer_convergence() {
        // stable immediately, but an event at round 3 must still fire
        let nodes = vec![NodeRecord {
            id: 0,
            x: 0.0,
            y: 0.0,
            channel: 1,
        }];
        let scenario = Scenario {
            range: 1.0,
            rule: Rule::StrictMex,
            max_rounds: 30,
            seed: 0,
            nodes,
            events: vec![TopologyEvent {
                at_round: 3,
                action: EventAction::Join {
                    id: 1,
                    x: 0.5,
                    y: 0.0,
                    channel: 1,
                },
            }],
        };
        let out = run(&scenario).unwrap();
        assert!(out.converged);
        assert!(out.trace.len() > 3, "ran past the event round");
        assert_eq!(out.state.nodes.len(), 2);
        let g = interference_graph(&out.state);
        let c = Coloring::new(out.state.channels()).unwrap();
        assert!(verify(&g, &c, ColoringKind::Grundy).unwrap().valid);
    }

    #[test]
    fn max_rounds_caps_divergence_reporting() {
        // two mutually interfering nodes on the same channel resolve fast,
        // so force non-convergence with max_rounds 1 and a pending event
        let nodes = vec![
            NodeRecord {
                id: 0,
                x: 0.0,
                y: 0.0,
                channel: 1,
            },
            NodeRecord {
                id: 1,
                x: 0.5,
                y: 0.0,
                channel: 1,
            },
        ];
        let scenario = Scenario {
            range: 1.0,
            rule: Rule::StrictMex,
            max_rounds: 1,
            seed: 0,
            nodes,
            events: vec![],
        };
        let out = run(&scenario).unwrap();
        assert!(!out.converged);
        assert_eq!(out.trace.len(), 1);
    }
}
