//! Bundle files: one block per schedule, each headed by `# set=S<k>`,
//! blocks separated by blank lines.

use std::collections::BTreeMap;

use crate::bounds::SetLabel;
use crate::error::TtpError;
use crate::schedule::Schedule;

use super::six::SixTeamCatalog;

pub fn write_bundle(catalog: &SixTeamCatalog) -> String {
    let blocks: Vec<String> =
        catalog.iter().map(|(label, s)| format!("# set={label}\n{}", s.to_file_string())).collect();
    blocks.join("\n")
}

pub fn parse_bundle(text: &str) -> Result<SixTeamCatalog, TtpError> {
    let mut sets: BTreeMap<SetLabel, Vec<Schedule>> = BTreeMap::new();
    let mut label: Option<(SetLabel, usize)> = None;
    let mut body = String::new();
    let mut body_start = 0;

    let mut flush = |label: &mut Option<(SetLabel, usize)>, body: &mut String, start: usize| -> Result<(), TtpError> {
        if let Some((l, header)) = label.take() {
            if body.trim().is_empty() {
                return Err(TtpError::Bundle { line: header, message: "set header without schedule".into() });
            }
            let s = Schedule::parse(body).map_err(|e| TtpError::Bundle { line: start, message: e.to_string() })?;
            sets.entry(l).or_default().push(s);
        } else if !body.trim().is_empty() {
            return Err(TtpError::Bundle { line: start, message: "schedule without '# set=' header".into() });
        }
        body.clear();
        Ok(())
    };

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            flush(&mut label, &mut body, body_start)?;
        } else if let Some(rest) = trimmed.strip_prefix("# set=") {
            flush(&mut label, &mut body, body_start)?;
            let l: SetLabel =
                rest.trim().parse().map_err(|m: String| TtpError::Bundle { line: lineno, message: m })?;
            label = Some((l, lineno));
            body_start = lineno + 1;
        } else {
            if body.is_empty() && label.is_none() && trimmed.starts_with('#') {
                continue;
            }
            if body.is_empty() {
                body_start = lineno;
            }
            body.push_str(line);
            body.push('\n');
        }
    }
    flush(&mut label, &mut body, body_start)?;
    Ok(SixTeamCatalog::new(sets))
}
