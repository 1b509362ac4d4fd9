use serde::{Deserialize, Serialize};

use crate::rdf::{Term, Triple};
use crate::turtle::parse_turtle;

use super::{ExplainError, Explanation, ExplanationItem, ExplanationType, Polarity, Question};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplanationDoc {
    question: QuestionDoc,
    items: Vec<ItemDoc>,
    text: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuestionDoc {
    id: String,
    #[serde(rename = "type")]
    kind: ExplanationType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    primary: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    secondary: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hypothetical: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct ItemDoc {
    characteristic: String,
    class: String,
    polarity: Polarity,
    derived_foods: Vec<String>,
    provenance: Vec<String>,
}

fn iri_text(t: &Term) -> String {
    t.as_iri()
        .map(str::to_string)
        .unwrap_or_else(|| t.to_string())
}

/// Pretty-printed JSON with a fixed key order.
pub fn to_json(e: &Explanation) -> String {
    let q = &e.question;
    let doc = ExplanationDoc {
        question: QuestionDoc {
            id: iri_text(q.id()),
            kind: q.kind(),
            primary: q.primary().map(iri_text),
            secondary: q.secondary().map(iri_text),
            hypothetical: q.hypothetical().map(iri_text),
        },
        items: e
            .items
            .iter()
            .map(|i| ItemDoc {
                characteristic: iri_text(&i.characteristic),
                class: iri_text(&i.class),
                polarity: i.polarity,
                derived_foods: i.derived_foods.iter().map(iri_text).collect(),
                provenance: i.provenance.iter().map(Triple::to_string).collect(),
            })
            .collect(),
        text: e.text.clone(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("explanation documents serialize");
    out.push('\n');
    out
}

fn iri(text: &str) -> Result<Term, ExplainError> {
    Term::try_iri(text).map_err(|e| ExplainError::Json(format!("{text:?}: {e}")))
}

/// Reads a document produced by [`to_json`].
pub fn from_json(text: &str) -> Result<Explanation, ExplainError> {
    let doc: ExplanationDoc =
        serde_json::from_str(text).map_err(|e| ExplainError::Json(e.to_string()))?;
    let q = doc.question;
    let question = Question::new(
        iri(&q.id)?,
        q.kind,
        q.primary.as_deref().map(iri).transpose()?,
        q.secondary.as_deref().map(iri).transpose()?,
        q.hypothetical.as_deref().map(iri).transpose()?,
    )?;
    let mut items = Vec::with_capacity(doc.items.len());
    for item in doc.items {
        let mut provenance = Vec::with_capacity(item.provenance.len());
        for line in &item.provenance {
            let g = parse_turtle(line, None)
                .map_err(|e| ExplainError::Json(format!("provenance {line:?}: {e}")))?;
            let mut triples = g.iter();
            match (triples.next(), triples.next()) {
                (Some(t), None) => provenance.push(t),
                _ => {
                    return Err(ExplainError::Json(format!(
                        "provenance entry {line:?} is not a single triple"
                    )))
                }
            }
        }
        items.push(ExplanationItem {
            characteristic: iri(&item.characteristic)?,
            class: iri(&item.class)?,
            polarity: item.polarity,
            derived_foods: item
                .derived_foods
                .iter()
                .map(|d| iri(d))
                .collect::<Result<_, _>>()?,
            provenance,
        });
    }
    Ok(Explanation {
        question,
        items,
        text: doc.text,
    })
}
