use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::kb::vocab::compact;
use crate::rdf::{Term, Variable};

/// A solution table: one column per projected variable, one row per
/// solution, unbound cells as `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingTable {
    columns: Vec<Variable>,
    rows: Vec<Vec<Option<Term>>>,
}

impl BindingTable {
    /// Sorts rows column by column (unbound first, then canonical term
    /// order) and, with `distinct`, drops duplicates.
    pub fn new(columns: Vec<Variable>, mut rows: Vec<Vec<Option<Term>>>, distinct: bool) -> Self {
        rows.sort();
        if distinct {
            rows.dedup();
        }
        BindingTable { columns, rows }
    }

    pub fn columns(&self) -> &[Variable] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Option<Term>>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The value of `var` in row `row`.
    pub fn get(&self, row: usize, var: &Variable) -> Option<&Term> {
        let col = self.columns.iter().position(|c| c == var)?;
        self.rows.get(row)?.get(col)?.as_ref()
    }

    /// Tab-separated values: a header of `?name` cells, then one line per
    /// row. IRIs are compacted with `prefixes` where possible.
    pub fn to_tsv(&self, prefixes: &BTreeMap<String, String>) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        out.push_str(&header.join("\t"));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|cell| {
                    cell.as_ref()
                        .map(|t| render_term(t, prefixes))
                        .unwrap_or_default()
                })
                .collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    /// SPARQL 1.1 query results JSON.
    pub fn to_json(&self) -> String {
        let vars: Vec<&str> = self.columns.iter().map(|c| c.name()).collect();
        let bindings: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    if let Some(term) = cell {
                        obj.insert(col.name().to_string(), term_json(term));
                    }
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "head": { "vars": vars },
            "results": { "bindings": bindings },
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
        text.push('\n');
        text
    }
}

/// Compact form of a term: `prefix:local` for IRIs in a known namespace,
/// N-Triples syntax otherwise.
pub fn render_term(term: &Term, prefixes: &BTreeMap<String, String>) -> String {
    match term {
        Term::Iri(iri) => compact(iri, prefixes.iter().map(|(p, n)| (p.as_str(), n.as_str())))
            .unwrap_or_else(|| term.to_string()),
        _ => term.to_string(),
    }
}

fn term_json(term: &Term) -> Value {
    match term {
        Term::Iri(iri) => json!({ "type": "uri", "value": iri.as_ref() }),
        Term::Blank(label) => json!({ "type": "bnode", "value": label.as_ref() }),
        Term::Literal(lit) => json!({
            "type": "literal",
            "value": lit.lexical(),
            "datatype": lit.datatype().iri(),
        }),
    }
}
