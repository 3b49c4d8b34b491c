use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::types::{Item, KnapsackInstance};

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Error::Malformed { line: lineno, reason: format!("not an integer: `{tok}`") })
        })
        .collect()
}

/// Parses the text form: a header `n t`, then `n` lines `w p`. Anything after
/// `#` is ignored and blank lines are skipped.
pub fn parse_instance_str(text: &str) -> Result<KnapsackInstance> {
    let mut rows = text.lines().enumerate().map(|(i, l)| (i + 1, strip(l))).filter(|(_, l)| !l.is_empty());
    let (hl, header) = rows.next().ok_or(Error::Malformed { line: 1, reason: "missing header".into() })?;
    let head = numbers(header, hl)?;
    let [n, t] = head[..] else {
        return Err(Error::Malformed { line: hl, reason: "header must be `n t`".into() });
    };
    if n < 0 {
        return Err(Error::Malformed { line: hl, reason: "negative item count".into() });
    }
    if t < 0 {
        return Err(Error::NegativeCapacity(t));
    }
    let mut items = Vec::with_capacity(n as usize);
    for (lineno, line) in rows {
        let row = numbers(line, lineno)?;
        let [w, p] = row[..] else {
            return Err(Error::Malformed { line: lineno, reason: "item line must be `w p`".into() });
        };
        let index = items.len();
        if w <= 0 {
            return Err(Error::NonPositiveWeight { index });
        }
        if p <= 0 {
            return Err(Error::NonPositiveProfit { index });
        }
        items.push(Item::new(w, p));
    }
    if items.len() != n as usize {
        return Err(Error::CountMismatch { expected: n as usize, found: items.len() });
    }
    KnapsackInstance::new(items, t)
}

pub fn parse_instance(path: &Path) -> Result<KnapsackInstance> {
    parse_instance_str(&std::fs::read_to_string(path)?)
}

pub fn instance_to_string(instance: &KnapsackInstance) -> String {
    let mut s = format!("{} {}\n", instance.n(), instance.capacity());
    for it in instance.items() {
        let _ = writeln!(s, "{} {}", it.weight, it.profit);
    }
    s
}

pub fn write_instance(instance: &KnapsackInstance, path: &Path) -> Result<()> {
    std::fs::write(path, instance_to_string(instance))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_definition() {
        let inst = parse_instance_str("2 4\n2 3\n3 4\n").unwrap();
        let pairs: Vec<_> = inst.items().iter().map(|i| (i.weight, i.profit)).collect();
        assert_eq!(pairs, vec![(2, 3), (3, 4)]);
        assert_eq!(inst.capacity(), 4);
        assert_eq!(instance_to_string(&inst), "2 4\n2 3\n3 4\n");
    }

    #[test]
    fn comments_and_blank_lines() {
        let inst = parse_instance_str("# header\n2 4  # n t\n\n2 3\n# mid\n3 4 # last\n").unwrap();
        assert_eq!(inst.n(), 2);
    }

    #[test]
    fn distinct_errors() {
        let code = |s: &str| parse_instance_str(s).unwrap_err().code();
        assert_eq!(code("1 4\n0 3\n"), 11);
        assert_eq!(code("1 4\n2 0\n"), 12);
        assert_eq!(code("2 4\n2 3\n"), 13);
        assert_eq!(code("1 4\n2 3\n1 1\n"), 13);
        assert_eq!(code("1 4\n2 x\n"), 10);
        assert_eq!(code("1 4\n2 3 5\n"), 10);
        assert_eq!(code(""), 10);
        assert_eq!(code("0 -1\n"), 14);
        assert!(matches!(parse_instance_str("1 4\n0 3\n"), Err(Error::NonPositiveWeight { index: 0 })));
    }
}
