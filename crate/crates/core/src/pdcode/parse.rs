use serde::{Deserialize, Serialize};

use super::{Crossing, Diagram};
use crate::error::{Error, Result};

/// JSON form of a PD code: 1-based edge labels, no crossings for the unknot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub crossings: Vec<[usize; 4]>,
}

enum Body {
    Unknot,
    Crossings(Vec<[usize; 4]>),
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_body(text: &str, line_offset: usize) -> Result<(Option<String>, Body)> {
    let mut name = None;
    let mut quads = Vec::new();
    let mut unknot = false;
    let mut seen_content = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1 + line_offset;
        let line = strip_comment(raw);
        let mut toks = line.split_whitespace();
        let Some(head) = toks.next() else { continue };
        let bad = |token: &str| Error::MalformedToken {
            line: line_no,
            token: token.to_string(),
        };
        match head {
            "name" if !seen_content && name.is_none() => {
                let rest: Vec<&str> = toks.collect();
                if rest.is_empty() {
                    return Err(bad("name"));
                }
                name = Some(rest.join(" "));
            }
            "unknot" if !seen_content => {
                if let Some(t) = toks.next() {
                    return Err(bad(t));
                }
                unknot = true;
                seen_content = true;
            }
            "X" if !unknot => {
                seen_content = true;
                let mut q = [0usize; 4];
                for slot in q.iter_mut() {
                    let t = toks.next().ok_or_else(|| bad(line.trim()))?;
                    let v: usize = t.parse().map_err(|_| bad(t))?;
                    if v == 0 {
                        return Err(bad(t));
                    }
                    *slot = v;
                }
                if let Some(t) = toks.next() {
                    return Err(bad(t));
                }
                quads.push(q);
            }
            other => return Err(bad(other)),
        }
    }
    if unknot {
        Ok((name, Body::Unknot))
    } else if quads.is_empty() {
        Err(Error::MalformedToken {
            line: line_offset + text.lines().count().max(1),
            token: "<empty diagram>".into(),
        })
    } else {
        Ok((name, Body::Crossings(quads)))
    }
}

/// Parses the line-oriented PD format: an optional `name` header, then
/// either `unknot` or one `X a b c d` line per crossing.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    parse_with_offset(text, 0)
}

fn parse_with_offset(text: &str, offset: usize) -> Result<Diagram> {
    let (name, body) = parse_body(text, offset)?;
    build(name, body)
}

fn build(name: Option<String>, body: Body) -> Result<Diagram> {
    match body {
        Body::Unknot => {
            let d = Diagram::unknot();
            Ok(match name {
                Some(n) => d.with_name(n),
                None => d,
            })
        }
        Body::Crossings(quads) => {
            let xs = orient(&quads)?;
            Diagram::from_crossings(xs, name)
        }
    }
}

pub fn parse_json(text: &str) -> Result<Diagram> {
    let pd: PdJson = serde_json::from_str(text)?;
    let body = if pd.crossings.is_empty() {
        Body::Unknot
    } else {
        if pd.crossings.iter().flatten().any(|&v| v == 0) {
            return Err(Error::MalformedToken {
                line: 1,
                token: "0".into(),
            });
        }
        Body::Crossings(pd.crossings)
    };
    build(pd.name, body)
}

/// Parses a knot table: named PD records separated by blank lines.
pub fn parse_table(text: &str) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    let mut record = String::new();
    let mut start = 0;
    let lines: Vec<&str> = text.lines().collect();
    let has_content = |r: &str| r.lines().any(|l| !strip_comment(l).trim().is_empty());
    for (i, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            if has_content(&record) {
                out.push(table_record(&record, start)?);
            }
            record.clear();
            start = i + 1;
        } else {
            record.push_str(line);
            record.push('\n');
        }
    }
    if has_content(&record) {
        out.push(table_record(&record, start)?);
    }
    Ok(out)
}

fn table_record(text: &str, offset: usize) -> Result<Diagram> {
    let d = parse_with_offset(text, offset)?;
    if d.name().is_none() {
        return Err(Error::MalformedToken {
            line: offset + 1,
            token: "<record without name>".into(),
        });
    }
    Ok(d)
}

/// Converts 1-based quadruples into oriented crossings.
///
/// Under-passes fix the direction of a component (the incoming under-edge is
/// listed first). A component that never passes under is oriented so that
/// labels increase along it.
fn orient(quads: &[[usize; 4]]) -> Result<Vec<Crossing>> {
    let n = quads.len();
    let m = 2 * n;
    let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    for (c, q) in quads.iter().enumerate() {
        for (s, &label) in q.iter().enumerate() {
            if label > m {
                let count = quads.iter().flatten().filter(|&&v| v == label).count();
                return Err(Error::BadIncidence(format!(
                    "edge label {label} appears {count} times and exceeds 2 x {n} crossings"
                )));
            }
            occ[label - 1].push((c, s));
        }
    }
    for (e, o) in occ.iter().enumerate() {
        if o.len() != 2 {
            return Err(Error::BadIncidence(format!(
                "edge label {} appears {} times",
                e + 1,
                o.len()
            )));
        }
    }
    let slots: Vec<[usize; 4]> = quads.iter().map(|q| q.map(|v| v - 1)).collect();
    let mut over_forward: Vec<Option<bool>> = vec![None; n];
    let mut visited = vec![false; m];
    for start in 0..m {
        if visited[start] {
            continue;
        }
        // Walk the component in a tentative direction, recording for each
        // edge the dart it leaves from and the dart it enters.
        let mut steps: Vec<(usize, (usize, usize), (usize, usize))> = Vec::new();
        let mut e = start;
        let mut from = occ[start][0];
        loop {
            visited[e] = true;
            let to = if occ[e][0] == from { occ[e][1] } else { occ[e][0] };
            steps.push((e, from, to));
            let next_from = (to.0, (to.1 + 2) % 4);
            let next = slots[to.0][next_from.1];
            if next == start && next_from == occ[start][0] {
                break;
            }
            e = next;
            from = next_from;
        }
        let mut forward_votes = 0;
        let mut backward_votes = 0;
        for &(_, from, to) in &steps {
            if to.1 == 0 {
                forward_votes += 1;
            }
            if from.1 == 0 {
                backward_votes += 1;
            }
        }
        let forward = match (forward_votes, backward_votes) {
            (0, 0) => {
                let labels: Vec<usize> = steps.iter().map(|s| s.0).collect();
                let k = labels.len();
                let i = (0..k).min_by_key(|&i| labels[i]).expect("non-empty");
                let min = labels[i];
                !(k >= 3 && labels[(i + k - 1) % k] == min + 1)
            }
            (_, 0) => true,
            (0, _) => false,
            _ => {
                return Err(Error::InconsistentOrientation(format!(
                    "component through edge {} passes under in both directions",
                    start + 1
                )))
            }
        };
        for &(_, from, to) in &steps {
            let enter = if forward { to } else { from };
            if enter.1 % 2 == 1 {
                over_forward[enter.0] = Some(enter.1 == 1);
            }
        }
    }
    Ok(slots
        .into_iter()
        .zip(over_forward)
        .map(|(s, f)| Crossing::new(s, f.expect("every crossing has an over strand")))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "name 3_1\nX 4 2 5 1\nX 6 4 1 3\nX 2 6 3 5\n";

    #[test]
    fn parses_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.name(), Some("3_1"));
        assert_eq!(d.edge_count(), 6);
        assert_eq!(d.arc_count(), 3);
        assert_eq!(d.region_count(), 5);
        assert_eq!(d.to_pd_text(), TREFOIL);
    }

    #[test]
    fn comments_and_whitespace() {
        let text = "# a trefoil\nname   3_1\n\tX 4 2 5 1   # first\nX 6 4 1 3\n\nX 2 6 3 5\n";
        assert_eq!(parse_pd(text).unwrap(), parse_pd(TREFOIL).unwrap());
    }

    #[test]
    fn triple_label_is_bad_incidence() {
        let err = parse_pd("X 4 2 5 1\nX 6 4 1 3\nX 2 6 4 5\n").unwrap_err();
        assert!(matches!(err, Error::BadIncidence(_)), "{err:?}");
    }

    #[test]
    fn malformed_tokens() {
        assert!(matches!(
            parse_pd("X 1 2 3\n"),
            Err(Error::MalformedToken { line: 1, .. })
        ));
        assert!(matches!(
            parse_pd("X 1 2 a 4\n"),
            Err(Error::MalformedToken { line: 1, .. })
        ));
        assert!(matches!(parse_pd("Y 1 2 3 4\n"), Err(Error::MalformedToken { .. })));
        assert!(matches!(parse_pd("X 0 1 1 0\n"), Err(Error::MalformedToken { .. })));
        assert!(matches!(parse_pd(""), Err(Error::MalformedToken { .. })));
        assert!(matches!(
            parse_pd("unknot\nX 1 2 2 1\n"),
            Err(Error::MalformedToken { line: 2, .. })
        ));
    }

    #[test]
    fn unknot_token() {
        let d = parse_pd("name O\nunknot\n").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.arc_count(), 1);
        assert_eq!(d.region_count(), 2);
        assert_eq!(d.closed_loop_count(), 1);
    }

    #[test]
    fn split_input_rejected() {
        // Two disjoint one-crossing kinks.
        let err = parse_pd("X 1 1 2 2\nX 3 3 4 4\n").unwrap_err();
        assert_eq!(err, Error::SplitInput);
    }

    #[test]
    fn nonplanar_rejected() {
        // A valid 4-regular gluing whose rotation system has genus 1.
        let err = parse_pd("X 1 3 2 4\nX 3 2 4 1\n").unwrap_err();
        assert!(
            matches!(err, Error::NonPlanar { .. } | Error::InconsistentOrientation(_)),
            "{err:?}"
        );
    }

    #[test]
    fn json_round_trip() {
        let d = parse_pd(TREFOIL).unwrap();
        let text = serde_json::to_string(&d.to_json()).unwrap();
        assert_eq!(parse_json(&text).unwrap(), d);
        let o = parse_json(r#"{"name":"O","crossings":[]}"#).unwrap();
        assert_eq!(o.crossing_count(), 0);
    }

    #[test]
    fn table_records() {
        let text = format!("{TREFOIL}\n\nname O\nunknot\n");
        let t = parse_table(&text).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1].name(), Some("O"));
        assert!(parse_table("X 4 2 5 1\nX 6 4 1 3\nX 2 6 3 5\n").is_err());
    }
}
