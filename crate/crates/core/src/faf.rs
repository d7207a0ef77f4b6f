//! The FAF text format for families and single automata, DOT export, and sample files.
//!
//! ```text
//! faf 1
//! kind fdfa
//! alphabet a b
//! leading
//!   states 1
//!   initial 0
//!   trans 0 a 0
//!   trans 0 b 0
//! progress 0
//!   states 2
//!   initial 0
//!   accepting 1
//!   trans 0 a 1
//! ```
//!
//! Besides the family kinds `fdfa`, `fdwa`, `fnfa` and `fdfa-duo`, the kinds `dfa` and
//! `nba` hold a single automaton whose directives appear at top level.
//! Missing deterministic transitions go to a rejecting sink.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::automata::{Dfa, Nba, Nfa, TransitionSystem, WeakDba};
use crate::error::{Error, Result};
use crate::family::{AnyFamily, DuoFdfa, Family, FamilyKind};
use crate::learning::Sample;
use crate::word::{Alphabet, Representation, Symbol, Word};

/// Anything a FAF file can hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Family(AnyFamily),
    Dfa(Dfa),
    Nba(Nba),
}

impl Document {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Document::Family(f) => f.kind().name(),
            Document::Dfa(_) => "dfa",
            Document::Nba(_) => "nba",
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Document::Family(f) => f.alphabet(),
            Document::Dfa(d) => d.alphabet(),
            Document::Nba(n) => n.nfa().alphabet(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Family(FamilyKind),
    Dfa,
    Nba,
}

impl Kind {
    fn from_name(s: &str) -> Option<Kind> {
        Some(match s {
            "fdfa" => Kind::Family(FamilyKind::Fdfa),
            "fdwa" => Kind::Family(FamilyKind::Fdwa),
            "fnfa" => Kind::Family(FamilyKind::Fnfa),
            "fdfa-duo" => Kind::Family(FamilyKind::DuoFdfa),
            "dfa" => Kind::Dfa,
            "nba" => Kind::Nba,
            _ => return None,
        })
    }

    fn deterministic(self) -> bool {
        !matches!(self, Kind::Family(FamilyKind::Fnfa) | Kind::Nba)
    }
}

#[derive(Clone)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, col, msg: msg.into() })
}

fn tokenize(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    let mut col = 0;
    let mut start_col = 0;
    for (i, c) in line.char_indices() {
        col += 1;
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], line: line_no, col: start_col });
            }
        } else if start.is_none() {
            start = Some(i);
            start_col = col;
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], line: line_no, col: start_col });
    }
    out
}

fn comment(t: &Token) -> bool {
    t.text.starts_with('#')
}

/// Fixed-arity directive: exactly `n` arguments, optionally followed by a comment.
fn args<'a, 'b>(toks: &'b [Token<'a>], n: usize) -> Result<&'b [Token<'a>]> {
    let head = &toks[0];
    if toks.len() <= n {
        let (line, col) = match toks.last() {
            Some(t) => (t.line, t.col + t.text.chars().count()),
            None => (head.line, head.col),
        };
        return err(line, col, format!("`{}` expects {n} argument(s)", head.text));
    }
    if let Some(extra) = toks.get(n + 1) {
        if !comment(extra) {
            return err(extra.line, extra.col, format!("unexpected token `{}`", extra.text));
        }
    }
    Ok(&toks[1..=n])
}

/// Variadic directive arguments up to the first comment.
fn list<'a, 'b>(toks: &'b [Token<'a>]) -> &'b [Token<'a>] {
    let end = toks.iter().skip(1).position(comment).map_or(toks.len(), |i| i + 1);
    &toks[1..end]
}

fn number(t: &Token) -> Result<usize> {
    t.text.parse().or_else(|_| err(t.line, t.col, format!("expected a number, found `{}`", t.text)))
}

fn state(t: &Token, n: usize) -> Result<usize> {
    let q = number(t)?;
    if q >= n {
        return err(t.line, t.col, format!("state {q} out of range (states {n})"));
    }
    Ok(q)
}

/// One automaton block as written.
struct Block {
    line: usize,
    col: usize,
    states: Option<usize>,
    initials: Vec<usize>,
    accepting: Vec<usize>,
    trans: Vec<(usize, Symbol, usize)>,
    seen: HashSet<(usize, Symbol)>,
}

impl Block {
    fn new(line: usize, col: usize) -> Self {
        Block {
            line,
            col,
            states: None,
            initials: Vec::new(),
            accepting: Vec::new(),
            trans: Vec::new(),
            seen: HashSet::new(),
        }
    }

    fn n(&self, at: &Token) -> Result<usize> {
        self.states.ok_or(()).or_else(|_| err(at.line, at.col, "`states` must come first in a block"))
    }

    fn directive(&mut self, toks: &[Token], alphabet: &Alphabet, kind: Kind, leading: bool) -> Result<()> {
        let head = &toks[0];
        match head.text {
            "states" => {
                let a = args(toks, 1)?;
                if self.states.is_some() {
                    return err(head.line, head.col, "duplicate `states`");
                }
                let n = number(&a[0])?;
                if n == 0 {
                    return err(a[0].line, a[0].col, "a block needs at least one state");
                }
                self.states = Some(n);
            }
            "initial" => {
                let a = args(toks, 1)?;
                let n = self.n(head)?;
                if !self.initials.is_empty() {
                    return err(head.line, head.col, "duplicate initial state");
                }
                self.initials.push(state(&a[0], n)?);
            }
            "initials" => {
                if kind.deterministic() || leading {
                    return err(head.line, head.col, "`initials` is only allowed in nondeterministic automata");
                }
                let n = self.n(head)?;
                let a = list(toks);
                if a.is_empty() {
                    return err(head.line, head.col, "`initials` needs at least one state");
                }
                for t in a {
                    self.initials.push(state(t, n)?);
                }
            }
            "accepting" => {
                if leading {
                    return err(head.line, head.col, "the leading transition system has no accepting states");
                }
                let n = self.n(head)?;
                for t in list(toks) {
                    self.accepting.push(state(t, n)?);
                }
            }
            "trans" => {
                let a = args(toks, 3)?;
                let n = self.n(head)?;
                let s = state(&a[0], n)?;
                let sym = alphabet.symbol(a[1].text).ok_or(()).or_else(|_| {
                    err(a[1].line, a[1].col, format!("undeclared symbol `{}` on line {}", a[1].text, a[1].line))
                })?;
                let t = state(&a[2], n)?;
                if (kind.deterministic() || leading) && !self.seen.insert((s, sym)) {
                    return err(
                        head.line,
                        head.col,
                        format!("duplicate transition from state {s} on `{}`", a[1].text),
                    );
                }
                self.trans.push((s, sym, t));
            }
            other => return err(head.line, head.col, format!("unknown directive `{other}`")),
        }
        Ok(())
    }

    fn finish_check(&self) -> Result<usize> {
        let n = self.states.ok_or(()).or_else(|_| err(self.line, self.col, "block has no `states`"))?;
        if self.initials.is_empty() {
            return err(self.line, self.col, "block has no initial state");
        }
        Ok(n)
    }

    fn ts(&self, alphabet: &Alphabet) -> Result<(TransitionSystem, Vec<Option<usize>>)> {
        let n = self.finish_check()?;
        let k = alphabet.len();
        let mut table = vec![None; n * k];
        for &(s, a, t) in &self.trans {
            table[s * k + a] = Some(t);
        }
        TransitionSystem::build(alphabet.clone(), n, self.initials[0], |q, a| table[q * k + a])
    }

    fn dfa(&self, alphabet: &Alphabet) -> Result<Dfa> {
        let n = self.finish_check()?;
        let k = alphabet.len();
        let mut table = vec![None; n * k];
        for &(s, a, t) in &self.trans {
            table[s * k + a] = Some(t);
        }
        Dfa::new(alphabet.clone(), n, self.initials[0], |q, a| table[q * k + a], &self.accepting)
    }

    fn nfa(&self, alphabet: &Alphabet) -> Result<Nfa> {
        let n = self.finish_check()?;
        Nfa::new(alphabet.clone(), n, &self.initials, &self.trans, &self.accepting)
    }
}

fn at_block<T>(b: &Block, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse { line: b.line, col: b.col, msg: other.to_string() },
    })
}

/// Parse a family file; single-automaton kinds are rejected.
pub fn parse_faf(text: &str) -> Result<AnyFamily> {
    match parse_document(text)? {
        Document::Family(f) => Ok(f),
        d => err(2, 1, format!("expected a family, found kind `{}`", d.kind_name())),
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| tokenize(i + 1, l))
        .filter(|t| !t.is_empty() && !comment(&t[0]));
    let last_line = text.lines().count().max(1);

    let header = lines.next().ok_or(()).or_else(|_| err(1, 1, "empty file; expected `faf 1`"))?;
    if header[0].text != "faf" {
        return err(header[0].line, header[0].col, "expected `faf 1`");
    }
    let v = &args(&header, 1)?[0];
    if v.text != "1" {
        return err(v.line, v.col, format!("unsupported format version `{}`", v.text));
    }

    let kl = lines.next().ok_or(()).or_else(|_| err(last_line, 1, "expected `kind`"))?;
    if kl[0].text != "kind" {
        return err(kl[0].line, kl[0].col, "expected `kind`");
    }
    let kt = &args(&kl, 1)?[0];
    let kind = Kind::from_name(kt.text)
        .ok_or(())
        .or_else(|_| err(kt.line, kt.col, format!("unknown kind `{}`", kt.text)))?;

    let al = lines.next().ok_or(()).or_else(|_| err(last_line, 1, "expected `alphabet`"))?;
    if al[0].text != "alphabet" {
        return err(al[0].line, al[0].col, "expected `alphabet`");
    }
    let alphabet = parse_alphabet_line(&al)?;

    match kind {
        Kind::Dfa | Kind::Nba => {
            let mut b = Block::new(al[0].line, 1);
            let mut first = true;
            for toks in lines {
                if first {
                    b.line = toks[0].line;
                    b.col = toks[0].col;
                    first = false;
                }
                b.directive(&toks, &alphabet, kind, false)?;
            }
            if first {
                return err(last_line, 1, "missing automaton");
            }
            if kind == Kind::Dfa {
                Ok(Document::Dfa(at_block(&b, b.dfa(&alphabet))?))
            } else {
                Ok(Document::Nba(Nba(at_block(&b, b.nfa(&alphabet))?)))
            }
        }
        Kind::Family(fk) => parse_family(fk, kind, &alphabet, lines, last_line).map(Document::Family),
    }
}

fn parse_alphabet_line(toks: &[Token]) -> Result<Alphabet> {
    let mut names = Vec::new();
    for (i, t) in toks.iter().enumerate().skip(1) {
        // `#` is a symbol only as the last token; otherwise it opens a comment
        if comment(t) && !(t.text == "#" && i + 1 == toks.len()) {
            break;
        }
        if names.contains(&t.text) {
            return err(t.line, t.col, format!("duplicate symbol `{}`", t.text));
        }
        if t.text == "_" {
            return err(t.line, t.col, "`_` is reserved for the empty word");
        }
        names.push(t.text);
    }
    if names.is_empty() {
        return err(toks[0].line, toks[0].col, "alphabet is empty");
    }
    Alphabet::new(&names).map_err(|e| Error::Parse { line: toks[0].line, col: toks[0].col, msg: e.to_string() })
}

fn parse_family<'a>(
    fk: FamilyKind,
    kind: Kind,
    alphabet: &Alphabet,
    lines: impl Iterator<Item = Vec<Token<'a>>>,
    last_line: usize,
) -> Result<AnyFamily> {
    let mut leading: Option<Block> = None;
    let mut progress: Vec<(usize, Block)> = Vec::new();
    // None: before any block; Some(None): leading; Some(Some(i)): progress[i]
    let mut cur: Option<Option<usize>> = None;
    for toks in lines {
        let head = &toks[0];
        match head.text {
            "leading" => {
                args(&toks, 0)?;
                if leading.is_some() {
                    return err(head.line, head.col, "duplicate `leading` block");
                }
                leading = Some(Block::new(head.line, head.col));
                cur = Some(None);
            }
            "progress" => {
                let a = args(&toks, 1)?;
                let q = number(&a[0])?;
                if progress.iter().any(|(p, _)| *p == q) {
                    return err(a[0].line, a[0].col, format!("duplicate progress block for state {q}"));
                }
                progress.push((q, Block::new(head.line, head.col)));
                cur = Some(Some(progress.len() - 1));
            }
            _ => match cur {
                None => return err(head.line, head.col, format!("`{}` outside of a block", head.text)),
                Some(None) => leading.as_mut().expect("open").directive(&toks, alphabet, kind, true)?,
                Some(Some(i)) => progress[i].1.directive(&toks, alphabet, kind, false)?,
            },
        }
    }
    let lb = leading.ok_or(()).or_else(|_| err(last_line, 1, "missing `leading` block"))?;
    let raw_n = lb.finish_check()?;
    if let Some((q, b)) = progress.iter().find(|(q, _)| *q >= raw_n) {
        return err(b.line, b.col, format!("progress block for state {q} out of range (states {raw_n})"));
    }
    let (ts, map) = at_block(&lb, lb.ts(alphabet))?;
    let mut slot: Vec<Option<&Block>> = vec![None; ts.size()];
    for (q, m) in map.iter().enumerate() {
        if let Some(i) = *m {
            let b = progress
                .iter()
                .find(|(p, _)| *p == q)
                .map(|(_, b)| b)
                .ok_or(())
                .or_else(|_| err(last_line, 1, format!("missing progress block for leading state {q}")))?;
            slot[i] = Some(b);
        }
    }
    let fam = match fk {
        FamilyKind::Fdfa | FamilyKind::DuoFdfa => {
            let ps = slot
                .iter()
                .map(|b| match b {
                    Some(b) => at_block(b, b.dfa(alphabet)),
                    None => Ok(Dfa::empty(alphabet.clone())),
                })
                .collect::<Result<Vec<_>>>()?;
            let f = Family::new(ts, ps)?;
            if fk == FamilyKind::Fdfa {
                AnyFamily::Fdfa(f)
            } else {
                AnyFamily::Duo(DuoFdfa(f))
            }
        }
        FamilyKind::Fdwa => {
            let ps = slot
                .iter()
                .map(|b| match b {
                    Some(b) => at_block(b, b.dfa(alphabet).and_then(WeakDba::new)),
                    None => WeakDba::new(Dfa::empty(alphabet.clone())),
                })
                .collect::<Result<Vec<_>>>()?;
            AnyFamily::Fdwa(Family::new(ts, ps)?)
        }
        FamilyKind::Fnfa => {
            let ps = slot
                .iter()
                .map(|b| match b {
                    Some(b) => at_block(b, b.nfa(alphabet)),
                    None => Nfa::new(alphabet.clone(), 1, &[0], &[], &[]),
                })
                .collect::<Result<Vec<_>>>()?;
            AnyFamily::Fnfa(Family::new(ts, ps)?)
        }
    };
    Ok(fam)
}

fn check_writable(alphabet: &Alphabet) -> Result<()> {
    let names = alphabet.names();
    for (i, n) in names.iter().enumerate() {
        if n.starts_with('#') && !(n == "#" && i + 1 == names.len()) {
            return Err(Error::Input(format!(
                "symbol {n:?} cannot be written: `#` is only a symbol as the last alphabet entry"
            )));
        }
    }
    Ok(())
}

fn write_header(out: &mut String, kind: &str, alphabet: &Alphabet) -> Result<()> {
    check_writable(alphabet)?;
    writeln!(out, "faf 1").unwrap();
    writeln!(out, "kind {kind}").unwrap();
    writeln!(out, "alphabet {}", alphabet.names().join(" ")).unwrap();
    Ok(())
}

fn write_ts(out: &mut String, ind: &str, t: &TransitionSystem) {
    writeln!(out, "{ind}states {}", t.size()).unwrap();
    writeln!(out, "{ind}initial {}", t.initial()).unwrap();
    for q in 0..t.size() {
        for a in 0..t.alphabet().len() {
            writeln!(out, "{ind}trans {q} {} {}", t.alphabet().name(a), t.succ(q, a)).unwrap();
        }
    }
}

fn write_accepting(out: &mut String, ind: &str, acc: &[bool]) {
    let f: Vec<String> = (0..acc.len()).filter(|&q| acc[q]).map(|q| q.to_string()).collect();
    if !f.is_empty() {
        writeln!(out, "{ind}accepting {}", f.join(" ")).unwrap();
    }
}

fn write_dfa(out: &mut String, ind: &str, d: &Dfa) {
    let t = d.ts();
    writeln!(out, "{ind}states {}", t.size()).unwrap();
    writeln!(out, "{ind}initial {}", t.initial()).unwrap();
    write_accepting(out, ind, d.accepting());
    for q in 0..t.size() {
        for a in 0..t.alphabet().len() {
            writeln!(out, "{ind}trans {q} {} {}", t.alphabet().name(a), t.succ(q, a)).unwrap();
        }
    }
}

fn write_nfa(out: &mut String, ind: &str, n: &Nfa) {
    writeln!(out, "{ind}states {}", n.size()).unwrap();
    let init: Vec<String> = n.initials().iter().map(|q| q.to_string()).collect();
    writeln!(out, "{ind}initials {}", init.join(" ")).unwrap();
    write_accepting(out, ind, n.accepting());
    for (s, a, t) in n.transitions() {
        writeln!(out, "{ind}trans {s} {} {t}", n.alphabet().name(a)).unwrap();
    }
}

fn write_family<P>(out: &mut String, f: &Family<P>, write: impl Fn(&mut String, &str, &P))
where
    P: crate::family::Progress,
{
    writeln!(out, "leading").unwrap();
    write_ts(out, "  ", f.leading());
    for q in 0..f.leading().size() {
        writeln!(out, "progress {q}").unwrap();
        write(out, "  ", f.progress(q));
    }
}

pub fn serialize_faf(f: &AnyFamily) -> Result<String> {
    let mut out = String::new();
    write_header(&mut out, f.kind().name(), f.alphabet())?;
    match f {
        AnyFamily::Fdfa(f) | AnyFamily::Duo(DuoFdfa(f)) => write_family(&mut out, f, write_dfa),
        AnyFamily::Fdwa(f) => write_family(&mut out, f, |o, i, p| write_dfa(o, i, p.dfa())),
        AnyFamily::Fnfa(f) => write_family(&mut out, f, write_nfa),
    }
    Ok(out)
}

pub fn serialize_document(d: &Document) -> Result<String> {
    match d {
        Document::Family(f) => serialize_faf(f),
        Document::Dfa(a) => {
            let mut out = String::new();
            write_header(&mut out, "dfa", a.alphabet())?;
            write_dfa(&mut out, "", a);
            Ok(out)
        }
        Document::Nba(a) => {
            let mut out = String::new();
            write_header(&mut out, "nba", a.nfa().alphabet())?;
            write_nfa(&mut out, "", a.nfa());
            Ok(out)
        }
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Edges grouped by (source, target) with their labels joined.
fn dot_edges(out: &mut String, ind: &str, prefix: &str, alphabet: &Alphabet, edges: &[(usize, Symbol, usize)]) {
    let mut grouped: Vec<((usize, usize), Vec<&str>)> = Vec::new();
    for &(s, a, t) in edges {
        match grouped.iter_mut().find(|(k, _)| *k == (s, t)) {
            Some((_, l)) => l.push(alphabet.name(a)),
            None => grouped.push(((s, t), vec![alphabet.name(a)])),
        }
    }
    for ((s, t), l) in grouped {
        writeln!(out, "{ind}{prefix}{s} -> {prefix}{t} [label=\"{}\"];", dot_escape(&l.join(","))).unwrap();
    }
}

fn dot_automaton(out: &mut String, ind: &str, prefix: &str, alphabet: &Alphabet, n: usize, initials: &[usize], acc: &[bool], edges: &[(usize, Symbol, usize)]) {
    for q in 0..n {
        let shape = if acc.get(q).copied().unwrap_or(false) { "doublecircle" } else { "circle" };
        writeln!(out, "{ind}{prefix}{q} [label=\"{q}\", shape={shape}];").unwrap();
    }
    for &i in initials {
        writeln!(out, "{ind}{prefix}init{i} [shape=point];").unwrap();
        writeln!(out, "{ind}{prefix}init{i} -> {prefix}{i};").unwrap();
    }
    dot_edges(out, ind, prefix, alphabet, edges);
}

fn dfa_edges(t: &TransitionSystem) -> Vec<(usize, Symbol, usize)> {
    let mut e = Vec::new();
    for q in 0..t.size() {
        for a in 0..t.alphabet().len() {
            e.push((q, a, t.succ(q, a)));
        }
    }
    e
}

/// Graphviz rendering; families get one cluster per component.
pub fn to_dot(d: &Document) -> String {
    let mut out = String::from("digraph faf {\n  rankdir=LR;\n");
    match d {
        Document::Dfa(a) => {
            dot_automaton(&mut out, "  ", "q", a.alphabet(), a.size(), &[0], a.accepting(), &dfa_edges(a.ts()));
        }
        Document::Nba(a) => {
            let n = a.nfa();
            dot_automaton(&mut out, "  ", "q", n.alphabet(), n.size(), n.initials(), n.accepting(), &n.transitions());
        }
        Document::Family(f) => {
            let t = f.leading();
            let al = f.alphabet();
            writeln!(out, "  subgraph cluster_leading {{\n    label=\"leading\";").unwrap();
            dot_automaton(&mut out, "    ", "l", al, t.size(), &[0], &[], &dfa_edges(t));
            out.push_str("  }\n");
            for q in 0..t.size() {
                writeln!(out, "  subgraph cluster_p{q} {{\n    label=\"progress {q}\";").unwrap();
                let prefix = format!("p{q}_");
                match f {
                    AnyFamily::Fdfa(f) | AnyFamily::Duo(DuoFdfa(f)) => {
                        let p = f.progress(q);
                        dot_automaton(&mut out, "    ", &prefix, al, p.size(), &[0], p.accepting(), &dfa_edges(p.ts()));
                    }
                    AnyFamily::Fdwa(f) => {
                        let p = f.progress(q).dfa();
                        dot_automaton(&mut out, "    ", &prefix, al, p.size(), &[0], p.accepting(), &dfa_edges(p.ts()));
                    }
                    AnyFamily::Fnfa(f) => {
                        let p = f.progress(q);
                        dot_automaton(&mut out, "    ", &prefix, al, p.size(), p.initials(), p.accepting(), &p.transitions());
                    }
                }
                out.push_str("  }\n");
            }
        }
    }
    out.push_str("}\n");
    out
}

fn sample_word(alphabet: &Alphabet, text: &str) -> Result<Word> {
    if text == "_" {
        Ok(Vec::new())
    } else {
        alphabet.parse(text)
    }
}

fn split_symbols(text: &str, dotted: bool) -> Vec<String> {
    if text == "_" || text.is_empty() {
        Vec::new()
    } else if dotted {
        text.split('.').map(String::from).collect()
    } else {
        text.chars().map(String::from).collect()
    }
}

/// Sample file: `+\tu\tx` and `-\tu\tx` lines, `_` for ε. An optional first line
/// `alphabet a b ...` fixes the alphabet; otherwise it is the sorted set of symbols used.
pub fn parse_sample(text: &str) -> Result<Sample> {
    let mut rows: Vec<(usize, bool, &str, &str)> = Vec::new();
    let mut declared: Option<Alphabet> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim_end_matches('\r');
        if l.trim().is_empty() || l.trim_start().starts_with("//") {
            continue;
        }
        if let Some(rest) = l.strip_prefix("alphabet") {
            if declared.is_some() || !rows.is_empty() {
                return err(line, 1, "`alphabet` must be the first line");
            }
            let names: Vec<&str> = rest.split_whitespace().collect();
            declared = Some(Alphabet::new(&names).map_err(|e| Error::Parse { line, col: 1, msg: e.to_string() })?);
            continue;
        }
        let f: Vec<&str> = l.split('\t').collect();
        if f.len() != 3 {
            return err(line, 1, "expected `+` or `-`, then u and x separated by tabs");
        }
        let label = match f[0] {
            "+" => true,
            "-" => false,
            s => return err(line, 1, format!("expected `+` or `-`, found `{s}`")),
        };
        if f[2] == "_" || f[2].is_empty() {
            return err(line, f[0].len() + f[1].len() + 3, "the loop word must be non-empty");
        }
        rows.push((line, label, f[1], f[2]));
    }
    let alphabet = match declared {
        Some(a) => a,
        None => {
            let dotted = rows.iter().any(|(_, _, u, x)| u.contains('.') || x.contains('.'));
            let syms: BTreeSet<String> =
                rows.iter().flat_map(|(_, _, u, x)| split_symbols(u, dotted).into_iter().chain(split_symbols(x, dotted))).collect();
            if syms.is_empty() {
                return err(1, 1, "empty sample without an `alphabet` line");
            }
            let names: Vec<String> = syms.into_iter().collect();
            Alphabet::new(&names)?
        }
    };
    let mut s = Sample::empty(alphabet.clone());
    for (line, label, u, x) in rows {
        let wrap = |e: Error| Error::Parse { line, col: 3, msg: e.to_string() };
        let r = Representation::new(sample_word(&alphabet, u).map_err(wrap)?, sample_word(&alphabet, x).map_err(wrap)?)
            .map_err(wrap)?;
        s.insert(r, label).map_err(wrap)?;
    }
    Ok(s)
}

pub fn serialize_sample(s: &Sample) -> String {
    let mut out = format!("alphabet {}\n", s.alphabet.names().join(" "));
    let w = |x: &Word| if x.is_empty() { "_".to_string() } else { s.alphabet.format(x) };
    for (r, label) in s.examples() {
        writeln!(out, "{}\t{}\t{}", if label { '+' } else { '-' }, w(&r.spoke), w(&r.cycle)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::translate::{gen_family, FamilyName};

    const MINIMAL: &str = "faf 1
kind fdfa            # fdfa | fdwa | fnfa
alphabet a b         # space-separated single tokens; '$' and '#' allowed
leading
  states 1
  initial 0
  trans 0 a 0
  trans 0 b 0
progress 0
  states 3
  initial 0
  accepting 1
  trans 0 b 1
  trans 1 a 1
  trans 0 a 2
  trans 2 a 2
  trans 2 b 2
  trans 1 b 2
";

    #[test]
    fn minimal_file_is_ba_star() {
        assert_eq!(parse_faf(MINIMAL).unwrap(), AnyFamily::Fdfa(fixtures::ba_star()));
    }

    #[test]
    fn round_trips() {
        let mut all: Vec<AnyFamily> = vec![
            fixtures::ba_star(),
            fixtures::odd(),
            fixtures::one_a(),
            fixtures::bi_ab(),
            fixtures::mod2_universal(),
            fixtures::ab_omega_saturated(),
        ]
        .into_iter()
        .map(AnyFamily::Fdfa)
        .collect();
        for name in FamilyName::ALL {
            all.push(gen_family(name.name(), 2).unwrap());
        }
        // stored NFAs are trimmed
        let n = fixtures::ba_star().to_fnfa();
        let trimmed = n.progress_all().iter().map(Nfa::trim).collect();
        all.push(AnyFamily::Fnfa(Family::new(n.leading().clone(), trimmed).unwrap()));
        all.push(AnyFamily::Duo(DuoFdfa(fixtures::odd())));
        for f in all {
            let text = serialize_faf(&f).unwrap();
            assert_eq!(parse_faf(&text).unwrap(), f, "{text}");
        }
    }

    #[test]
    fn hash_symbol_last() {
        let text = "faf 1\nkind dfa\nalphabet a #\nstates 1\ninitial 0\naccepting 0 # all\ntrans 0 # 0 # loop\n";
        let Document::Dfa(d) = parse_document(text).unwrap() else { panic!() };
        assert_eq!(d.alphabet().names(), ["a", "#"]);
        assert!(d.accepts(&[1, 1]));
        assert!(!d.accepts(&[0]));
        assert_eq!(parse_document(&serialize_document(&Document::Dfa(d.clone())).unwrap()).unwrap(), Document::Dfa(d));
        let bad = Alphabet::new(&["#", "a"]).unwrap();
        assert!(serialize_document(&Document::Dfa(Dfa::empty(bad))).is_err());
    }

    #[test]
    fn undeclared_symbol() {
        let text = MINIMAL.replace("trans 2 b 2", "trans 2 c 2");
        match parse_faf(&text) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (17, 11));
                assert!(msg.contains("`c`") && msg.contains("line 17"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        let cases = [
            (MINIMAL.replace("progress 0", "progress 1"), 9),
            (MINIMAL.replace("trans 2 b 2", "trans 2 a 1"), 17),
            (MINIMAL.replace("  states 3", "  states two"), 10),
            (MINIMAL.replace("faf 1", "faf 2"), 1),
            (MINIMAL.replace("  trans 0 b 1", "  trans 0 b 1 extra"), 13),
            (MINIMAL.replace("accepting 1", "accepting 7"), 12),
        ];
        for (text, want) in cases {
            match parse_faf(&text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text}"),
                other => panic!("{other:?}"),
            }
        }
        let missing = "faf 1\nkind fdfa\nalphabet a\nleading\n states 2\n initial 0\n trans 0 a 1\nprogress 0\n states 1\n initial 0\n";
        assert!(matches!(parse_faf(missing), Err(Error::Parse { .. })));
    }

    #[test]
    fn completion_and_unreachable_blocks() {
        // state 1 is unreachable; progress 0 misses its b-transition
        let text = "faf 1\nkind fdfa\nalphabet a b\nleading\n states 2\n initial 0\n trans 0 a 0\nprogress 0\n states 1\n initial 0\n accepting 0\n trans 0 a 0\nprogress 1\n states 1\n initial 0\n";
        let AnyFamily::Fdfa(f) = parse_faf(text).unwrap() else { panic!() };
        assert_eq!(f.leading().size(), 2);
        assert!(f.progress(0).accepts(&[0, 0]));
        assert!(!f.progress(0).accepts(&[0, 1]));
        assert!(f.progress(1).is_empty_language());
    }

    #[test]
    fn fnfa_allows_repeats() {
        let text = "faf 1\nkind fnfa\nalphabet a\nleading\n states 1\n initial 0\n trans 0 a 0\nprogress 0\n states 2\n initials 0 1\n accepting 1\n trans 0 a 0\n trans 0 a 1\n";
        let AnyFamily::Fnfa(f) = parse_faf(text).unwrap() else { panic!() };
        assert!(f.progress(0).accepts(&[0]));
        assert!(parse_faf(&text.replace("fnfa", "fdfa").replace("initials 0 1", "initial 0")).is_err());
    }

    #[test]
    fn samples() {
        let s = parse_sample("+\t_\tab\n-\tb\ta\n").unwrap();
        assert_eq!(s.alphabet.names(), ["a", "b"]);
        assert_eq!(s.len(), 2);
        assert_eq!(parse_sample(&serialize_sample(&s)).unwrap(), s);
        let d = parse_sample("+\tfoo\tbar.foo\n").unwrap();
        assert_eq!(d.alphabet.names(), ["bar", "foo"]);
        assert!(parse_sample("+\t_\ta\n-\ta\ta\n").is_err());
        assert!(parse_sample("+\t_\t_\n").is_err());
    }

    #[test]
    fn dot_mentions_every_cluster() {
        let d = to_dot(&Document::Family(AnyFamily::Fdfa(fixtures::odd())));
        assert!(d.starts_with("digraph"));
        assert!(d.contains("cluster_leading") && d.contains("cluster_p0"));
    }
}
