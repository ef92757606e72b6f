use std::fmt::Write;

use super::Status;
use crate::term::{Render, Signature};

/// One state transition in a trace: rule, what it acted on, the resulting
/// decision counter and status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub step: usize,
    pub rule: &'static str,
    pub subject: String,
    pub k: usize,
    pub status: String,
}

impl TraceEvent {
    /// Tab-separated line: `step rule subject k status`.
    pub fn line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.step, self.rule, self.subject, self.k, self.status
        )
    }
}

pub fn status_text(status: &Status, sig: &Signature) -> String {
    match status {
        Status::Top => "top".to_string(),
        Status::Bottom => "bottom".to_string(),
        Status::Conflict(c) => {
            let mut s = String::from("conflict ");
            c.render(sig, &mut s);
            s
        }
    }
}

pub fn render_trace(events: &[TraceEvent]) -> String {
    let mut out = String::from("# step\trule\tsubject\tk\tstatus\n");
    for e in events {
        let _ = writeln!(out, "{}", e.line());
    }
    out
}
