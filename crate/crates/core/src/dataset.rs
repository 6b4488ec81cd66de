//! File formats, the bundled university results table, banding of pass
//! percentages into items, and year-over-year trend analysis.
//!
//! Formats (UTF-8, `#` starts a comment line, blank lines ignored):
//!
//! * sequence CSV: `seq_id,time,items`, one transaction per line, items
//!   space separated, `time` a base-10 integer; lines may be unsorted.
//! * transactions CSV: `txn_id,items`.
//! * results CSV: header `year,subject_code,pass_pct`, percentages with at
//!   most two fractional digits.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::io::{self, BufRead, BufReader, Read, Write};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{Alphabet, DataSequence, Item, Itemset, SequenceDatabase};

pub const BUNDLED_RESULTS: &str = include_str!("../data/university_results.csv");

/// SHA-256 of [`BUNDLED_RESULTS`].
pub const BUNDLED_RESULTS_SHA256: &str =
    "b303b2406383a72a4fffc7a6cbd8fa4d6fb3c4b88f1d9a113a3e44cb203dee19";

pub fn bundled_results_digest() -> String {
    hex::encode(Sha256::digest(BUNDLED_RESULTS.as_bytes()))
}

fn parse_error(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

/// Yields `(line_number, trimmed_line)` for every non-comment, non-blank line.
fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Err(e) => Some(Err(Error::Io(e))),
            Ok(line) => {
                let trimmed = line.trim();
                if trimmed.is_empty() || trimmed.starts_with('#') {
                    None
                } else {
                    Some(Ok((i + 1, trimmed.to_owned())))
                }
            }
        })
}

#[derive(Debug)]
struct SequenceLine {
    id: String,
    time: i64,
    tokens: Vec<String>,
}

fn parse_sequence_line(line_no: usize, line: &str) -> Result<SequenceLine> {
    let mut fields = line.splitn(3, ',');
    let (Some(id), Some(time), Some(items)) = (fields.next(), fields.next(), fields.next()) else {
        return Err(parse_error(line_no, "expected seq_id,time,items"));
    };
    let id = id.trim();
    if id.is_empty() {
        return Err(parse_error(line_no, "empty seq_id"));
    }
    let time_text = time.trim();
    let time = time_text
        .parse::<i64>()
        .map_err(|_| Error::NonIntegerTime {
            line: line_no,
            value: time_text.to_owned(),
        })?;
    let tokens: Vec<String> = items.split_whitespace().map(str::to_owned).collect();
    if tokens.is_empty() {
        return Err(parse_error(line_no, "transaction has no items"));
    }
    if let Some(bad) = tokens.iter().find(|t| t.contains(',')) {
        return Err(parse_error(
            line_no,
            format!("item {bad:?} contains a comma"),
        ));
    }
    Ok(SequenceLine {
        id: id.to_owned(),
        time,
        tokens,
    })
}

/// Reads a whole sequence CSV. Item ids follow sorted token order and
/// sequences keep their order of first appearance.
pub fn load_sequence_db<R: Read>(source: R) -> Result<SequenceDatabase> {
    let mut order: Vec<String> = Vec::new();
    let mut grouped: HashMap<String, Vec<(i64, Vec<String>)>> = HashMap::new();
    let mut tokens: BTreeSet<String> = BTreeSet::new();
    for entry in content_lines(BufReader::new(source)) {
        let (line_no, line) = entry?;
        let parsed = parse_sequence_line(line_no, &line)?;
        tokens.extend(parsed.tokens.iter().cloned());
        let slot = grouped.entry(parsed.id.clone()).or_insert_with(|| {
            order.push(parsed.id.clone());
            Vec::new()
        });
        slot.push((parsed.time, parsed.tokens));
    }
    let alphabet = Alphabet::from_tokens(tokens);
    let sequences = order
        .into_iter()
        .map(|id| {
            let transactions = grouped.remove(&id).expect("grouped id");
            DataSequence::new(
                id,
                transactions.into_iter().map(|(time, toks)| {
                    let items = toks
                        .iter()
                        .map(|t| alphabet.get(t).expect("interned"))
                        .collect();
                    (time, items)
                }),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    SequenceDatabase::new(sequences, alphabet)
}

/// Writes one line per transaction; inverse of [`load_sequence_db`].
pub fn write_sequence_db<W: Write>(out: &mut W, db: &SequenceDatabase) -> io::Result<()> {
    let alphabet = db.alphabet();
    for seq in db.sequences() {
        for t in seq.transactions() {
            let mut tokens: Vec<&str> =
                t.items.items().iter().map(|&i| alphabet.token(i)).collect();
            tokens.sort_unstable();
            writeln!(out, "{},{},{}", seq.id(), t.time, tokens.join(" "))?;
        }
    }
    Ok(())
}

type RawTransaction = (i64, Vec<Item>);

/// Incremental sequence CSV reader for streams.
///
/// Consecutive lines with the same `seq_id` form one data-sequence, which is
/// emitted as soon as a different id (or the end of input) is seen. An id
/// that reappears after its group closed is an error. Items are interned in
/// arrival order into a growing alphabet.
pub struct SequenceReader<R> {
    lines: io::Lines<R>,
    line_no: usize,
    alphabet: Alphabet,
    current: Option<(String, Vec<RawTransaction>)>,
    closed: std::collections::HashSet<String>,
    done: bool,
}

impl<R: BufRead> SequenceReader<R> {
    pub fn new(reader: R) -> Self {
        SequenceReader {
            lines: reader.lines(),
            line_no: 0,
            alphabet: Alphabet::new(),
            current: None,
            closed: Default::default(),
            done: false,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn finish_current(&mut self) -> Option<Result<DataSequence>> {
        let (id, transactions) = self.current.take()?;
        self.closed.insert(id.clone());
        Some(DataSequence::new(id, transactions))
    }
}

impl<R: BufRead> Iterator for SequenceReader<R> {
    type Item = Result<DataSequence>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            let Some(line) = self.lines.next() else {
                self.done = true;
                return self.finish_current();
            };
            self.line_no += 1;
            let line = match line {
                Ok(line) => line,
                Err(e) => {
                    self.done = true;
                    return Some(Err(Error::Io(e)));
                }
            };
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let parsed = match parse_sequence_line(self.line_no, trimmed) {
                Ok(p) => p,
                Err(e) => {
                    self.done = true;
                    return Some(Err(e));
                }
            };
            let items: Vec<Item> = parsed
                .tokens
                .iter()
                .map(|t| self.alphabet.intern(t))
                .collect();
            match &mut self.current {
                Some((id, transactions)) if *id == parsed.id => {
                    transactions.push((parsed.time, items));
                }
                _ => {
                    if self.closed.contains(&parsed.id) {
                        self.done = true;
                        return Some(Err(parse_error(
                            self.line_no,
                            format!("sequence {:?} reappears after it ended", parsed.id),
                        )));
                    }
                    let finished = self.finish_current();
                    self.current = Some((parsed.id, vec![(parsed.time, items)]));
                    if finished.is_some() {
                        return finished;
                    }
                }
            }
        }
    }
}

/// Reads a transactions CSV into itemsets over a token-sorted alphabet.
pub fn load_transactions<R: Read>(source: R) -> Result<(Alphabet, Vec<Itemset>)> {
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut ids: std::collections::HashSet<String> = Default::default();
    for entry in content_lines(BufReader::new(source)) {
        let (line_no, line) = entry?;
        let Some((id, items)) = line.split_once(',') else {
            return Err(parse_error(line_no, "expected txn_id,items"));
        };
        if !ids.insert(id.trim().to_owned()) {
            return Err(parse_error(
                line_no,
                format!("duplicate txn_id {:?}", id.trim()),
            ));
        }
        let tokens: Vec<String> = items.split_whitespace().map(str::to_owned).collect();
        if tokens.is_empty() {
            return Err(parse_error(line_no, "transaction has no items"));
        }
        rows.push(tokens);
    }
    if rows.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let alphabet = Alphabet::from_tokens(rows.iter().flatten().cloned());
    let transactions = rows
        .into_iter()
        .map(|tokens| Itemset::new(tokens.iter().map(|t| alphabet.get(t).expect("interned"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((alphabet, transactions))
}

/// A percentage with two fractional digits, stored in hundredths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Percent(u32);

impl Percent {
    pub const HUNDRED: Percent = Percent(10_000);

    pub fn from_hundredths(hundredths: u32) -> Self {
        Percent(hundredths)
    }

    pub fn hundredths(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }

    /// Parses a non-negative decimal with at most two fractional digits.
    pub fn parse(text: &str) -> Option<Percent> {
        let (whole, frac) = text.split_once('.').unwrap_or((text, "0"));
        let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        if !digits(whole) || !digits(frac) || frac.len() > 2 {
            return None;
        }
        let whole: u32 = whole.parse().ok()?;
        let frac: u32 = format!("{frac:0<2}").parse().ok()?;
        whole.checked_mul(100)?.checked_add(frac).map(Percent)
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.0 / 100, self.0 % 100)
    }
}

/// Signed difference between two [`Percent`] values, in hundredths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PercentDelta(pub i64);

impl PercentDelta {
    pub fn between(from: Percent, to: Percent) -> Self {
        PercentDelta(to.0 as i64 - from.0 as i64)
    }

    pub fn magnitude(self) -> Percent {
        Percent(self.0.unsigned_abs() as u32)
    }
}

impl fmt::Display for PercentDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "+" };
        write!(f, "{sign}{}", self.magnitude())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultRecord {
    pub year: i32,
    pub subject_code: String,
    pub pass_pct: Percent,
}

pub fn load_results<R: Read>(source: R) -> Result<Vec<ResultRecord>> {
    let mut lines = content_lines(BufReader::new(source));
    match lines.next() {
        Some(Ok((_, header))) if header.replace(' ', "") == "year,subject_code,pass_pct" => {}
        Some(Ok((line, _))) => {
            return Err(parse_error(
                line,
                "expected header year,subject_code,pass_pct",
            ))
        }
        Some(Err(e)) => return Err(e),
        None => return Err(Error::EmptyDatabase),
    }
    let mut seen: BTreeSet<(i32, String)> = BTreeSet::new();
    let mut records = Vec::new();
    for entry in lines {
        let (line_no, line) = entry?;
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [year, subject, pct] = fields[..] else {
            return Err(parse_error(line_no, "expected year,subject_code,pass_pct"));
        };
        let year: i32 = year
            .parse()
            .map_err(|_| parse_error(line_no, format!("bad year {year:?}")))?;
        if subject.is_empty() {
            return Err(parse_error(line_no, "empty subject_code"));
        }
        let pass_pct = if let Some(stripped) = pct.strip_prefix('-') {
            if Percent::parse(stripped).is_some() {
                return Err(Error::OutOfRange {
                    line: line_no,
                    value: pct.to_owned(),
                });
            }
            None
        } else {
            Percent::parse(pct)
        }
        .ok_or_else(|| parse_error(line_no, format!("bad percentage {pct:?}")))?;
        if pass_pct > Percent::HUNDRED {
            return Err(Error::OutOfRange {
                line: line_no,
                value: pct.to_owned(),
            });
        }
        if !seen.insert((year, subject.to_owned())) {
            return Err(Error::DuplicateKey {
                year,
                subject: subject.to_owned(),
            });
        }
        records.push(ResultRecord {
            year,
            subject_code: subject.to_owned(),
            pass_pct,
        });
    }
    Ok(records)
}

pub fn bundled_results() -> Vec<ResultRecord> {
    load_results(BUNDLED_RESULTS.as_bytes()).expect("bundled results parse")
}

/// Half-open bins `[previous_bound, upper_bound)` over `[0, 100]`; the last
/// bin also includes 100.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandScheme {
    bands: Vec<(Percent, String)>,
}

impl Default for BandScheme {
    fn default() -> Self {
        BandScheme::parse("50:F,70:C,85:B,100:A").expect("default bands")
    }
}

impl BandScheme {
    pub fn new(bands: Vec<(Percent, String)>) -> Result<Self> {
        if bands.is_empty() {
            return Err(Error::InvalidBands("no bands".into()));
        }
        for pair in bands.windows(2) {
            if pair[0].0 >= pair[1].0 {
                return Err(Error::InvalidBands(format!(
                    "bounds must increase, got {} then {}",
                    pair[0].0, pair[1].0
                )));
            }
        }
        if bands[bands.len() - 1].0 != Percent::HUNDRED {
            return Err(Error::InvalidBands("last bound must be 100".into()));
        }
        if bands[0].0 == Percent(0) {
            return Err(Error::InvalidBands("first bound must be above 0".into()));
        }
        for (_, label) in &bands {
            if label.is_empty()
                || label.contains(|c: char| c.is_whitespace() || c == ',' || c == ':')
            {
                return Err(Error::InvalidBands(format!("bad label {label:?}")));
            }
        }
        Ok(BandScheme { bands })
    }

    /// Parses `bound:label` pairs, e.g. `50:F,70:C,85:B,100:A`.
    pub fn parse(text: &str) -> Result<Self> {
        let bands = text
            .split(',')
            .map(|part| {
                let (bound, label) = part.split_once(':').ok_or_else(|| {
                    Error::InvalidBands(format!("expected bound:label, got {part:?}"))
                })?;
                let bound = Percent::parse(bound.trim())
                    .ok_or_else(|| Error::InvalidBands(format!("bad bound {bound:?}")))?;
                Ok((bound, label.trim().to_owned()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bands)
    }

    pub fn band(&self, value: Percent) -> &str {
        self.bands
            .iter()
            .find(|(bound, _)| value < *bound)
            .unwrap_or(&self.bands[self.bands.len() - 1])
            .1
            .as_str()
    }
}

/// One data-sequence per subject, one single-item transaction per year
/// (time = year) whose item is `subject:band`.
pub fn discretize(records: &[ResultRecord], scheme: &BandScheme) -> Result<SequenceDatabase> {
    let mut by_subject: BTreeMap<&str, Vec<(i32, String)>> = BTreeMap::new();
    for r in records {
        by_subject.entry(&r.subject_code).or_default().push((
            r.year,
            format!("{}:{}", r.subject_code, scheme.band(r.pass_pct)),
        ));
    }
    let alphabet = Alphabet::from_tokens(by_subject.values().flatten().map(|(_, t)| t.clone()));
    let sequences = by_subject
        .into_iter()
        .map(|(subject, rows)| {
            DataSequence::new(
                subject,
                rows.into_iter().map(|(year, token)| {
                    (year as i64, vec![alphabet.get(&token).expect("interned")])
                }),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    SequenceDatabase::new(sequences, alphabet)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
    Flat,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
            Direction::Flat => "flat",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrendPoint {
    pub year: i32,
    pub pass_pct: Percent,
    /// `None` for the first year of a subject.
    pub change: Option<(PercentDelta, Direction)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubjectTrend {
    pub subject: String,
    pub points: Vec<TrendPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anomaly {
    pub subject: String,
    pub year: i32,
    pub delta: PercentDelta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrendSummary {
    pub subjects: Vec<SubjectTrend>,
    pub anomalies: Vec<Anomaly>,
}

/// Year-over-year changes per subject. A change is an anomaly when its
/// magnitude strictly exceeds `anomaly_threshold`.
pub fn trend(records: &[ResultRecord], anomaly_threshold: Percent) -> Result<TrendSummary> {
    let mut by_subject: BTreeMap<&str, Vec<(i32, Percent)>> = BTreeMap::new();
    for r in records {
        by_subject
            .entry(&r.subject_code)
            .or_default()
            .push((r.year, r.pass_pct));
    }
    let mut subjects = Vec::new();
    let mut anomalies = Vec::new();
    for (subject, mut rows) in by_subject {
        if rows.len() < 2 {
            return Err(Error::InsufficientHistory(subject.to_owned()));
        }
        rows.sort();
        let mut points = Vec::with_capacity(rows.len());
        let mut prev: Option<Percent> = None;
        for (year, pass_pct) in rows {
            let change = prev.map(|p| {
                let delta = PercentDelta::between(p, pass_pct);
                let direction = match delta.0.signum() {
                    1 => Direction::Up,
                    -1 => Direction::Down,
                    _ => Direction::Flat,
                };
                if delta.magnitude() > anomaly_threshold {
                    anomalies.push(Anomaly {
                        subject: subject.to_owned(),
                        year,
                        delta,
                    });
                }
                (delta, direction)
            });
            points.push(TrendPoint {
                year,
                pass_pct,
                change,
            });
            prev = Some(pass_pct);
        }
        subjects.push(SubjectTrend {
            subject: subject.to_owned(),
            points,
        });
    }
    Ok(TrendSummary {
        subjects,
        anomalies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::render_pattern;
    use crate::model::Pattern;

    fn pct(s: &str) -> Percent {
        Percent::parse(s).unwrap()
    }

    fn lookup(records: &[ResultRecord], year: i32, subject: &str) -> Percent {
        records
            .iter()
            .find(|r| r.year == year && r.subject_code == subject)
            .unwrap()
            .pass_pct
    }

    #[test]
    fn percent_parsing() {
        assert_eq!(pct("62.5").hundredths(), 6250);
        assert_eq!(pct("29.69").hundredths(), 2969);
        assert_eq!(pct("100").hundredths(), 10_000);
        assert_eq!(pct("0.05").hundredths(), 5);
        assert!(Percent::parse("1.234").is_none());
        assert!(Percent::parse("1.").is_none());
        assert!(Percent::parse(".5").is_none());
        assert!(Percent::parse("x").is_none());
        assert_eq!(pct("62.5").to_string(), "62.50");
    }

    #[test]
    fn sequence_db_parsing() {
        let db = load_sequence_db("s1,1,a\ns1,2,a b\ns1,3,c".as_bytes()).unwrap();
        assert_eq!(db.len(), 1);
        let s = &db.sequences()[0];
        assert_eq!(s.len(), 3);
        assert_eq!(s.transactions()[1].time, 2);
        assert_eq!(s.transactions()[1].items.len(), 2);

        let db = load_sequence_db("s1,2,a\ns1,2,b".as_bytes()).unwrap();
        let s = &db.sequences()[0];
        assert_eq!(s.len(), 1);
        assert_eq!(s.transactions()[0].items.len(), 2);
    }

    #[test]
    fn sequence_db_errors() {
        assert!(matches!(
            load_sequence_db("s1,x,a".as_bytes()),
            Err(Error::NonIntegerTime { line: 1, .. })
        ));
        assert!(matches!(
            load_sequence_db("# c\ns1,1.5,a".as_bytes()),
            Err(Error::NonIntegerTime { line: 2, .. })
        ));
        assert!(matches!(
            load_sequence_db("s1,1".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load_sequence_db("s1,1,  ".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn unsorted_lines_and_comments() {
        let db = load_sequence_db("# header\n\nb,3,y\na,1,x\nb,1,x\n".as_bytes()).unwrap();
        assert_eq!(db.sequences()[0].id(), "b");
        assert_eq!(db.sequences()[0].transactions()[0].time, 1);
        assert_eq!(db.alphabet().token(Item(0)), "x");
    }

    #[test]
    fn streaming_reader_groups_contiguous_lines() {
        let text = "a,2,x\na,1,y\nb,1,x\nc,5,z\n";
        let mut reader = SequenceReader::new(text.as_bytes());
        let seqs: Vec<DataSequence> = reader.by_ref().collect::<Result<_>>().unwrap();
        assert_eq!(seqs.len(), 3);
        assert_eq!(seqs[0].transactions()[0].time, 1);
        assert_eq!(reader.alphabet().len(), 3);

        let bad: Vec<Result<DataSequence>> =
            SequenceReader::new("a,1,x\nb,1,x\na,2,x\n".as_bytes()).collect();
        assert!(bad[0].is_ok());
        assert!(matches!(bad[1], Err(Error::Parse { line: 3, .. })));
        assert_eq!(bad.len(), 2);
    }

    #[test]
    fn transactions_parsing() {
        let (alphabet, txns) = load_transactions("t1,b a\nt2,a\n".as_bytes()).unwrap();
        assert_eq!(alphabet.len(), 2);
        assert_eq!(txns[0].len(), 2);
        assert!(matches!(
            load_transactions("".as_bytes()),
            Err(Error::EmptyDatabase)
        ));
        assert!(load_transactions("t1,a\nt1,b\n".as_bytes()).is_err());
    }

    #[test]
    fn bundled_values() {
        let records = bundled_results();
        assert_eq!(records.len(), 25);
        assert_eq!(lookup(&records, 2003, "BE-101"), pct("62.5"));
        assert_eq!(lookup(&records, 2007, "BE-105"), pct("29.69"));
        assert_eq!(lookup(&records, 2005, "BE-103"), pct("91.57"));
        assert_eq!(lookup(&records, 2004, "BE-102"), pct("68.69"));
    }

    #[test]
    fn bundled_digest_is_pinned() {
        assert_eq!(bundled_results_digest(), BUNDLED_RESULTS_SHA256);
    }

    #[test]
    fn results_errors() {
        let head = "year,subject_code,pass_pct\n";
        assert!(matches!(
            load_results(format!("{head}2003,X,10\n2003,X,11\n").as_bytes()),
            Err(Error::DuplicateKey { year: 2003, .. })
        ));
        assert!(matches!(
            load_results(format!("{head}2003,X,100.01\n").as_bytes()),
            Err(Error::OutOfRange { line: 2, .. })
        ));
        assert!(matches!(
            load_results(format!("{head}2003,X,-1\n").as_bytes()),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            load_results(format!("{head}2003,X,1.001\n").as_bytes()),
            Err(Error::Parse { .. })
        ));
        assert!(load_results("2003,X,1\n".as_bytes()).is_err());
    }

    #[test]
    fn banding() {
        let scheme = BandScheme::default();
        assert_eq!(scheme.band(pct("70")), "B");
        assert_eq!(scheme.band(pct("69.99")), "C");
        assert_eq!(scheme.band(pct("100")), "A");
        assert_eq!(scheme.band(pct("0")), "F");
        assert_eq!(scheme.band(pct("29.69")), "F");
        assert!(BandScheme::parse("70:C,50:F,85:B,100:A").is_err());
        assert!(BandScheme::parse("50:F,70:C,85:B").is_err());
        assert!(BandScheme::parse("50:F,70").is_err());
    }

    #[test]
    fn discretize_bundled() {
        let db = discretize(&bundled_results(), &BandScheme::default()).unwrap();
        assert_eq!(db.len(), 5);
        let be103 = db.sequences().iter().find(|s| s.id() == "BE-103").unwrap();
        let a = db.alphabet().get("BE-103:A").unwrap();
        assert_eq!(be103.len(), 5);
        assert!(be103.transactions().iter().all(|t| t.items.items() == [a]));
        assert_eq!(be103.transactions()[0].time, 2003);
        let be105 = db.sequences().iter().find(|s| s.id() == "BE-105").unwrap();
        let last = &be105.transactions()[4];
        assert_eq!(last.time, 2007);
        let p = Pattern::single(last.items.items()[0]);
        assert_eq!(render_pattern(&p, db.alphabet()), "<{BE-105:F}>");
    }

    #[test]
    fn trend_examples() {
        let summary = trend(&bundled_results(), pct("20")).unwrap();
        let be105 = summary
            .subjects
            .iter()
            .find(|s| s.subject == "BE-105")
            .unwrap();
        let last = be105.points.last().unwrap();
        assert_eq!(last.change, Some((PercentDelta(-4471), Direction::Down)));
        assert_eq!(PercentDelta(-4471).to_string(), "-44.71");
        assert!(summary
            .anomalies
            .iter()
            .any(|a| a.subject == "BE-105" && a.year == 2007));

        let be101 = summary
            .subjects
            .iter()
            .find(|s| s.subject == "BE-101")
            .unwrap();
        assert_eq!(be101.points[0].change, None);
        assert_eq!(
            be101.points[1].change,
            Some((PercentDelta(1730), Direction::Up))
        );
        assert!(!summary
            .anomalies
            .iter()
            .any(|a| a.subject == "BE-101" && a.year == 2004));
    }

    #[test]
    fn flat_series() {
        let head = "year,subject_code,pass_pct\n";
        let records =
            load_results(format!("{head}2001,X,50\n2002,X,50\n2003,X,50\n").as_bytes()).unwrap();
        let summary = trend(&records, pct("20")).unwrap();
        assert!(summary.anomalies.is_empty());
        assert!(summary.subjects[0].points[1..]
            .iter()
            .all(|p| p.change == Some((PercentDelta(0), Direction::Flat))));
        let single = load_results(format!("{head}2001,X,50\n").as_bytes()).unwrap();
        assert!(matches!(
            trend(&single, pct("20")),
            Err(Error::InsufficientHistory(_))
        ));
    }
}
