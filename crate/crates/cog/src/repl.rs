//! Line-oriented conversation loop.

use std::io::{self, BufRead, Write};
use std::path::Path;

use cog_core::cognition::{Reply, Session, Signals};

use crate::snapshot;

pub const HELP: &str = "statements end with `.`, questions with `?`; commands: :wm :signals :save <file> :load <file> :quit";

pub fn format_signals(s: &Signals) -> String {
    format!("surprise={:.2} certainty={:.2} confusion={:.2} boredom={:.2}", s.surprise, s.certainty, s.confusion, s.boredom)
}

fn meta<W: Write>(session: &mut Session, cmd: &str, arg: &str, out: &mut W) -> io::Result<bool> {
    match cmd {
        ":quit" | ":q" => return Ok(false),
        ":wm" => {
            for (id, label, level) in session.working_memory() {
                let label = if label.is_empty() { format!("#{}", id.0) } else { label.to_string() };
                writeln!(out, "{label}\t{level:.3}")?;
            }
        }
        ":signals" => writeln!(out, "{}", format_signals(&session.last_signals()))?,
        ":save" if !arg.is_empty() => match snapshot::save_file(session.graph(), Path::new(arg)) {
            Ok(()) => writeln!(out, "saved {arg}")?,
            Err(e) => writeln!(out, "error: {e}")?,
        },
        ":load" if !arg.is_empty() => match snapshot::load_file(Path::new(arg)) {
            Ok(g) => {
                *session = Session::from_graph(g, session.lexicon().clone(), *session.activation().params());
                writeln!(out, "loaded {arg}")?;
            }
            Err(e) => writeln!(out, "error: {e}")?,
        },
        _ => writeln!(out, "{HELP}")?,
    }
    Ok(true)
}

/// Runs until `:quit` or end of input.
pub fn run<R: BufRead, W: Write>(session: &mut Session, input: R, mut out: W, prompt: bool) -> io::Result<()> {
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(out, "> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with(':') {
            let (cmd, arg) = line.split_once(' ').unwrap_or((line, ""));
            if !meta(session, cmd, arg.trim(), &mut out)? {
                break;
            }
            continue;
        }
        let reply = session.say(line);
        match &reply {
            Reply::Error { message, .. } => {
                writeln!(out, "error: {message}")?;
                writeln!(out, "{HELP}")?;
            }
            other => writeln!(out, "{}", other.text())?,
        }
        writeln!(out, "  [{}]", format_signals(&reply.signals()))?;
    }
    out.flush()
}
