//! Command results rendered as text or JSON. Ids are always sorted.

use maxtree_core::gpc::{ConsistencyResult, ConsistentIds};
use maxtree_core::multiobjective::InclusionReport;
use maxtree_core::{EdgeSet, Instance, ParsedDocument, UndirectedGraph};
use serde_json::{json, Value};

use crate::Format;

pub struct Report {
    json: Value,
    text: String,
    pub negative: bool,
    pub output: String,
}

fn ids(graph: &UndirectedGraph, set: &EdgeSet) -> Vec<String> {
    graph.sorted_ids(set).into_iter().map(|id| id.0).collect()
}

fn line(ids: &[String]) -> String {
    ids.join(" ")
}

fn tree_lists(graph: &UndirectedGraph, trees: &[EdgeSet]) -> Vec<Vec<String>> {
    trees.iter().map(|t| ids(graph, t)).collect()
}

fn consistent_text(ids: &ConsistentIds) -> String {
    match ids {
        ConsistentIds::Edges(list) => line(list),
        ConsistentIds::No => "no".into(),
    }
}

impl Report {
    fn new(json: Value, text: String, negative: bool) -> Self {
        Report {
            json,
            text,
            negative,
            output: String::new(),
        }
    }

    pub fn empty() -> Self {
        Report::new(Value::Null, String::new(), false)
    }

    pub fn format(mut self, format: Format) -> Self {
        self.output = match format {
            Format::Text => std::mem::take(&mut self.text),
            Format::Json => serde_json::to_string(&self.json).expect("serializable"),
        };
        self
    }

    pub fn check(doc: &ParsedDocument) -> Self {
        let connected = doc.graph.is_connected();
        let acyclic = doc.relation.is_p_acyclic();
        let strict = doc.relation.strict_count();
        let indifferent = doc.relation.indifferent_pairs().count();
        let json = json!({
            "connected": connected,
            "pAcyclic": acyclic,
            "vertices": doc.graph.vertex_count(),
            "edges": doc.graph.edge_count(),
            "strictPairs": strict,
            "indifferentPairs": indifferent,
        });
        let text = format!(
            "vertices: {}\nedges: {}\nstrict pairs: {strict}\nindifferent pairs: {indifferent}\nconnected: {connected}\nP-acyclic: {acyclic}",
            doc.graph.vertex_count(),
            doc.graph.edge_count(),
        );
        Report::new(json, text, !(connected && acyclic))
    }

    pub fn solve(inst: &Instance, tree: Option<&EdgeSet>) -> Self {
        match tree {
            Some(t) => {
                let list = ids(inst.graph(), t);
                Report::new(json!({ "tree": list }), line(&list), false)
            }
            None => Report::new(json!({ "tree": "no" }), "no".into(), true),
        }
    }

    pub fn consistent(inst: &Instance, result: &ConsistencyResult) -> Self {
        let ids = ConsistentIds::of(result, inst.graph());
        let negative = ids == ConsistentIds::No;
        Report::new(
            json!({ "consistent": ids }),
            consistent_text(&ids),
            negative,
        )
    }

    pub fn trees(inst: &Instance, trees: &[EdgeSet]) -> Self {
        let lists = tree_lists(inst.graph(), trees);
        let text = if lists.is_empty() {
            "no".into()
        } else {
            lists.iter().map(|t| line(t)).collect::<Vec<_>>().join("\n")
        };
        Report::new(json!({ "maximalTrees": lists }), text, trees.is_empty())
    }

    pub fn pareto(inst: &Instance, result: &ConsistencyResult) -> Self {
        let rel = inst.relation();
        let pair = |x: usize, y: usize| vec![rel.id(x).0.clone(), rel.id(y).0.clone()];
        let mut strict: Vec<Vec<String>> = rel.strict_pairs().map(|(x, y)| pair(x, y)).collect();
        strict.sort();
        let mut indifferent: Vec<Vec<String>> = rel
            .indifferent_pairs()
            .map(|(x, y)| {
                let mut p = pair(x, y);
                p.sort();
                p
            })
            .collect();
        indifferent.sort();
        let consistent = ConsistentIds::of(result, inst.graph());
        let mut text = Vec::new();
        text.extend(strict.iter().map(|p| format!("{} > {}", p[0], p[1])));
        text.extend(indifferent.iter().map(|p| format!("{} ~ {}", p[0], p[1])));
        text.push(format!("consistent: {}", consistent_text(&consistent)));
        let negative = consistent == ConsistentIds::No;
        Report::new(
            json!({ "strict": strict, "indifferent": indifferent, "consistent": consistent }),
            text.join("\n"),
            negative,
        )
    }

    pub fn compare(graph: &UndirectedGraph, report: &InclusionReport) -> Self {
        let witnesses = tree_lists(graph, &report.strict_witnesses);
        let violations = tree_lists(graph, &report.violations);
        let json = json!({
            "holds": report.holds,
            "sumParetoTrees": tree_lists(graph, &report.sum_pareto),
            "paretoTrees": tree_lists(graph, &report.pareto_trees),
            "strictWitnesses": witnesses,
            "violations": violations,
        });
        let show =
            |lists: &[Vec<String>]| lists.iter().map(|t| line(t)).collect::<Vec<_>>().join(", ");
        let text = format!(
            "holds: {}\nsum-Pareto trees: {}\nPareto trees: {}\nwitnesses: {}\nviolations: {}",
            report.holds,
            report.sum_pareto.len(),
            report.pareto_trees.len(),
            show(&witnesses),
            show(&violations),
        );
        Report::new(json, text, !report.holds)
    }
}
