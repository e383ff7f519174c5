use serde::{Deserialize, Serialize};

use super::dsl::{emit_expression, emit_schedule, parse_expression, parse_schedule};
use super::{ParseError, ParseErrorKind};
use crate::circuit::GatePool;
use crate::error::Result;
use crate::network::AutomataNetwork;
use crate::schedule::UpdateSchedule;

/// A network together with an optional update schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkDocument {
    pub network: AutomataNetwork,
    pub schedule: Option<UpdateSchedule>,
}

#[derive(Serialize, Deserialize)]
struct JsonAutomaton {
    name: String,
    function: String,
}

#[derive(Serialize, Deserialize)]
struct JsonDocument {
    automata: Vec<JsonAutomaton>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schedule: Option<Vec<Vec<String>>>,
}

fn json_error(msg: impl Into<String>) -> ParseError {
    ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::Json(msg.into()),
    }
}

pub fn parse_json(text: &str) -> Result<NetworkDocument> {
    let doc: JsonDocument = serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        kind: ParseErrorKind::Json(e.to_string()),
    })?;
    let names: Vec<String> = doc.automata.iter().map(|a| a.name.clone()).collect();
    let mut pool = GatePool::new();
    let mut outputs = Vec::with_capacity(names.len());
    for a in &doc.automata {
        let root = parse_expression(&a.function, &names, &mut pool)
            .map_err(|e| json_error(format!("function of `{}`: {}", a.name, e)))?;
        outputs.push(root);
    }
    let network = AutomataNetwork::new(names, pool, outputs)?;
    let schedule = match doc.schedule {
        None => None,
        Some(blocks) => {
            let text = blocks
                .iter()
                .map(|b| format!("{{{}}}", b.join(",")))
                .collect::<Vec<_>>()
                .join(" ");
            Some(parse_schedule(&text, network.names())?)
        }
    };
    Ok(NetworkDocument { network, schedule })
}

pub fn emit_json(doc: &NetworkDocument) -> String {
    let net = &doc.network;
    let automata = (0..net.len())
        .map(|i| JsonAutomaton {
            name: net.name(i).to_string(),
            function: emit_expression(net.pool(), net.outputs()[i], net.names()),
        })
        .collect();
    let schedule = doc.schedule.as_ref().map(|s| {
        s.blocks()
            .iter()
            .map(|b| b.iter().map(|&i| net.name(i).to_string()).collect())
            .collect()
    });
    let json = JsonDocument { automata, schedule };
    serde_json::to_string_pretty(&json).expect("documents always serialize")
}

impl NetworkDocument {
    /// The schedule in DSL form, or the parallel schedule when absent.
    pub fn schedule_text(&self) -> String {
        match &self.schedule {
            Some(s) => emit_schedule(s, self.network.names()),
            None => emit_schedule(
                &UpdateSchedule::parallel(self.network.len()),
                self.network.names(),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlang::{emit_network, parse_network};

    #[test]
    fn round_trips_with_schedule() {
        let net = parse_network("a = !b | c\nb = a\nc = !b").unwrap();
        let schedule = parse_schedule("{b,c} {a} {a,b}", net.names()).unwrap();
        let doc = NetworkDocument {
            network: net,
            schedule: Some(schedule),
        };
        let text = emit_json(&doc);
        assert!(text.contains("\"function\": \"!b | c\""));
        let back = parse_json(&text).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn schedule_is_optional() {
        let doc = parse_json(r#"{"automata":[{"name":"a","function":"!a"}]}"#).unwrap();
        assert!(doc.schedule.is_none());
        assert_eq!(emit_network(&doc.network), "a = !a\n");
        assert_eq!(doc.schedule_text(), "{a}");
    }

    #[test]
    fn reports_bad_json_and_bad_functions() {
        assert!(parse_json("{\"automata\": [").is_err());
        let err = parse_json(r#"{"automata":[{"name":"a","function":"q"}]}"#).unwrap_err();
        assert!(err.to_string().contains("undeclared variable `q`"));
        let err = parse_json(r#"{"automata":[{"name":"a","function":"a"}],"schedule":[["b"]]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("unknown automaton `b`"));
    }
}
