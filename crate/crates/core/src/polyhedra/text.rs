use num::{BigInt, One, Signed, Zero};

use super::system::{Inequality, LinSystem, Rat, Sense};
use crate::error::{validation, Error, Result};

/// One inequality per line (`c1*v1 + c2*v2 <= r`, rationals as `p/q`), with a
/// leading `# vars:` line fixing the variable order. Nonnegativity appears as
/// explicit `1*v >= 0` rows.
pub fn format_system(sys: &LinSystem) -> String {
    let mut out = format!("# vars: {}\n", sys.vars().join(" "));
    for r in sys.materialize() {
        out.push_str(&format_row(sys.vars(), &r));
        out.push('\n');
    }
    out
}

fn format_row(vars: &[String], r: &Inequality) -> String {
    let mut s = String::new();
    for (c, v) in r.coeffs.iter().zip(vars) {
        if c.is_zero() {
            continue;
        }
        if s.is_empty() {
            s.push_str(&format!("{c}*{v}"));
        } else if c.is_negative() {
            s.push_str(&format!(" - {}*{v}", -c));
        } else {
            s.push_str(&format!(" + {c}*{v}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    format!("{s} {} {}", r.sense.symbol(), r.rhs)
}

fn parse_rat(tok: &str) -> Result<Rat> {
    let bad = || Error::Validation(format!("bad number `{tok}`"));
    let (neg, body) = match tok.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, tok.strip_prefix('+').unwrap_or(tok)),
    };
    let val = if let Some((p, q)) = body.split_once('/') {
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Rat::new(p, q)
    } else if let Ok(i) = body.parse::<BigInt>() {
        Rat::from_integer(i)
    } else {
        let f: f64 = body.parse().map_err(|_| bad())?;
        Rat::from_float(f).ok_or_else(bad)?
    };
    Ok(if neg { -val } else { val })
}

fn split_terms(lhs: &str) -> Vec<String> {
    let compact: String = lhs.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        let boundary = (ch == '+' || ch == '-') && !cur.is_empty() && !matches!(prev, Some('*' | '/'));
        if boundary {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
        prev = Some(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    terms
}

/// Parses the text form written by [`format_system`].
pub fn parse_system(text: &str) -> Result<LinSystem> {
    let mut header: Option<Vec<String>> = None;
    let mut parsed: Vec<(Vec<(String, Rat)>, Sense, Rat)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(v) = rest.trim().strip_prefix("vars:") {
                header = Some(v.split_whitespace().map(str::to_string).collect());
            }
            continue;
        }
        let (sense, op) = if line.contains("<=") {
            (Sense::Le, "<=")
        } else if line.contains(">=") {
            (Sense::Ge, ">=")
        } else {
            return validation(format!("line {}: missing <= or >=", ln + 1));
        };
        let (lhs, rhs) = line.split_once(op).expect("operator present");
        let rhs = parse_rat(rhs.trim())?;
        let mut terms = Vec::new();
        for t in split_terms(lhs) {
            if t == "0" {
                continue;
            }
            let (c, v) = match t.split_once('*') {
                Some((c, v)) => (parse_rat(c)?, v.to_string()),
                None => match t.strip_prefix('-') {
                    Some(v) => (-Rat::one(), v.to_string()),
                    None => (Rat::one(), t.trim_start_matches('+').to_string()),
                },
            };
            if v.is_empty() {
                return validation(format!("line {}: empty variable name", ln + 1));
            }
            terms.push((v, c));
        }
        parsed.push((terms, sense, rhs));
    }
    let vars = match header {
        Some(v) => v,
        None => {
            let mut v: Vec<String> = Vec::new();
            for (terms, _, _) in &parsed {
                for (name, _) in terms {
                    if !v.contains(name) {
                        v.push(name.clone());
                    }
                }
            }
            v
        }
    };
    let mut sys = LinSystem::from_names(vars)?;
    for (terms, sense, rhs) in parsed {
        let nonzero: Vec<_> = terms.iter().filter(|(_, c)| !c.is_zero()).collect();
        if sense == Sense::Ge && rhs.is_zero() && nonzero.len() == 1 && nonzero[0].1.is_one() {
            sys.set_nonneg(&nonzero[0].0)?;
            continue;
        }
        let refs: Vec<(&str, Rat)> = terms.iter().map(|(n, c)| (n.as_str(), c.clone())).collect();
        sys.add(&refs, sense, rhs)?;
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::ratio;

    #[test]
    fn round_trip() {
        let mut s = LinSystem::new(&["R1", "R2"]).unwrap().all_nonneg();
        s.add(&[("R1", ratio(3, 2)), ("R2", ratio(-1, 3))], Sense::Le, ratio(7, 4)).unwrap();
        s.add_int(&[("R2", 1)], Sense::Ge, -2).unwrap();
        let text = format_system(&s);
        assert!(text.contains("3/2*R1 - 1/3*R2 <= 7/4"));
        let back = parse_system(&text).unwrap();
        assert_eq!(format_system(&back), text);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_system("x + y = 3").is_err());
        assert!(parse_system("1/0*x <= 1").is_err());
    }
}
