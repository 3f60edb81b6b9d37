use super::ParityCheckMatrix;
use crate::{Error, Result};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    /// Next non-blank line as (1-based line number, tokens).
    fn next_tokens(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        for (k, line) in self.inner.by_ref() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if !toks.is_empty() {
                return Ok((k + 1, toks));
            }
        }
        Err(Error::Parse { line: 0, msg: format!("unexpected end of file while reading {what}") })
    }
}

fn ints(line: usize, toks: &[&str]) -> Result<Vec<usize>> {
    toks.iter()
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("expected a nonnegative integer, found {t:?}") }))
        .collect()
}

fn expect_len(line: usize, v: &[usize], n: usize, what: &str) -> Result<()> {
    if v.len() != n {
        return Err(Error::Parse { line, msg: format!("{what}: expected {n} values, found {}", v.len()) });
    }
    Ok(())
}

/// Parses the alist format (1-indexed, zero padding in adjacency lists allowed).
pub fn parse_alist(text: &str) -> Result<ParityCheckMatrix> {
    let mut lines = Lines::new(text);
    let (l, t) = lines.next_tokens("header")?;
    let head = ints(l, &t)?;
    expect_len(l, &head, 2, "header \"n m\"")?;
    let (n, m) = (head[0], head[1]);
    if n == 0 || m == 0 {
        return Err(Error::Parse { line: l, msg: "n and m must be positive".into() });
    }
    let (l, t) = lines.next_tokens("maximum degrees")?;
    let maxd = ints(l, &t)?;
    expect_len(l, &maxd, 2, "maximum degrees")?;
    let (l, t) = lines.next_tokens("column degrees")?;
    let col_deg = ints(l, &t)?;
    expect_len(l, &col_deg, n, "column degrees")?;
    let (l, t) = lines.next_tokens("row degrees")?;
    let row_deg = ints(l, &t)?;
    expect_len(l, &row_deg, m, "row degrees")?;
    if col_deg.iter().max() != Some(&maxd[0]) || row_deg.iter().max() != Some(&maxd[1]) {
        return Err(Error::Parse { line: l, msg: "maximum degrees disagree with degree lists".into() });
    }

    let mut col_lists = Vec::with_capacity(n);
    for (i, &d) in col_deg.iter().enumerate() {
        let (l, t) = lines.next_tokens("column adjacency")?;
        let v: Vec<usize> = ints(l, &t)?.into_iter().filter(|&x| x != 0).collect();
        if v.len() != d {
            return Err(Error::Parse { line: l, msg: format!("column {} lists {} checks, degree says {d}", i + 1, v.len()) });
        }
        if let Some(&bad) = v.iter().find(|&&x| x > m) {
            return Err(Error::Parse { line: l, msg: format!("check index {bad} exceeds m={m}") });
        }
        col_lists.push(v);
    }
    let mut rows = Vec::with_capacity(m);
    let mut last_line = 0;
    for (j, &d) in row_deg.iter().enumerate() {
        let (l, t) = lines.next_tokens("row adjacency")?;
        last_line = l;
        let v: Vec<usize> = ints(l, &t)?.into_iter().filter(|&x| x != 0).collect();
        if v.len() != d {
            return Err(Error::Parse { line: l, msg: format!("row {} lists {} bits, degree says {d}", j + 1, v.len()) });
        }
        if let Some(&bad) = v.iter().find(|&&x| x > n) {
            return Err(Error::Parse { line: l, msg: format!("bit index {bad} exceeds n={n}") });
        }
        rows.push(v.into_iter().map(|x| x - 1).collect::<Vec<_>>());
    }
    for (i, checks) in col_lists.iter().enumerate() {
        for &j in checks {
            if !rows[j - 1].contains(&i) {
                return Err(Error::Parse {
                    line: last_line,
                    msg: format!("column list of bit {} names check {j}, whose row list omits it", i + 1),
                });
            }
        }
    }
    let h = ParityCheckMatrix::from_row_supports(n, rows).map_err(|e| Error::Parse { line: last_line, msg: e.to_string() })?;
    if (0..n).any(|i| h.col_weight(i) != col_deg[i]) {
        return Err(Error::Parse { line: last_line, msg: "row lists disagree with column lists".into() });
    }
    Ok(h)
}

/// Parses the dense format: a line "m n" followed by m rows of 0/1 characters.
pub fn parse_dense(text: &str) -> Result<ParityCheckMatrix> {
    let mut lines = Lines::new(text);
    let (l, t) = lines.next_tokens("header")?;
    let head = ints(l, &t)?;
    expect_len(l, &head, 2, "header \"m n\"")?;
    let (m, n) = (head[0], head[1]);
    let mut dense = Vec::with_capacity(m);
    for _ in 0..m {
        let (l, t) = lines.next_tokens("matrix row")?;
        let row: Vec<u8> = t
            .concat()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse { line: l, msg: format!("unexpected character {c:?}") }),
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::Parse { line: l, msg: format!("row has {} entries, expected {n}", row.len()) });
        }
        if row.iter().all(|&b| b == 0) {
            return Err(Error::Parse { line: l, msg: "all-zero row".into() });
        }
        dense.push(row);
    }
    ParityCheckMatrix::from_dense(&dense)
}

/// Parses either format. The alist second line always holds two maximum
/// degrees, while a dense file has a single 0/1 token there.
pub fn parse_matrix(text: &str) -> Result<ParityCheckMatrix> {
    let second = text.lines().filter(|l| !l.trim().is_empty()).nth(1);
    match second {
        Some(line) if line.split_whitespace().count() == 1 => parse_dense(text),
        _ => parse_alist(text),
    }
}

pub(super) fn write_alist(h: &ParityCheckMatrix) -> String {
    // An empty adjacency list is written as a single 0 so the line is not blank.
    let join = |v: &mut dyn Iterator<Item = usize>| {
        let s = v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        if s.is_empty() { "0".to_string() } else { s }
    };
    let max_col = (0..h.n()).map(|i| h.col_weight(i)).max().unwrap_or(0);
    let mut s = format!("{} {}\n{} {}\n", h.n(), h.m(), max_col, h.max_row_weight());
    s += &join(&mut (0..h.n()).map(|i| h.col_weight(i)));
    s.push('\n');
    s += &join(&mut (0..h.m()).map(|j| h.row_weight(j)));
    s.push('\n');
    for i in 0..h.n() {
        s += &join(&mut h.bit_checks(i).iter().map(|&j| j + 1));
        s.push('\n');
    }
    for j in 0..h.m() {
        s += &join(&mut h.check_support(j).iter().map(|&i| i + 1));
        s.push('\n');
    }
    s
}
