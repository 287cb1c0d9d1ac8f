//! Instantiates the LaTeX saddle displays kept under `tests/golden/`.
//!
//! Only the notation those displays use is understood: `\prod` with
//! `i=a`, `j\neq i` or both in the subscript, `\frac`, juxtaposition, `\overline`
//! and sub/superscripted symbols.

use std::collections::HashMap;

use crate::symbolic::{Polynomial, Var};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Cmd(String),
    Letter(char),
    Num(i64),
    Sym(char),
}

fn tokenize(s: &str) -> Vec<Tok> {
    let c: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < c.len() {
        let ch = c[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch == '\\' {
            let start = i + 1;
            i += 1;
            while i < c.len() && c[i].is_ascii_alphabetic() {
                i += 1;
            }
            if i == start {
                i += 1;
            }
            out.push(Tok::Cmd(c[start..i].iter().collect()));
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < c.len() && c[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(c[start..i].iter().collect::<String>().parse().unwrap()));
        } else if ch.is_ascii_alphabetic() {
            out.push(Tok::Letter(ch));
            i += 1;
        } else {
            out.push(Tok::Sym(ch));
            i += 1;
        }
    }
    out
}

#[derive(Clone, Debug)]
enum Ast {
    Int(i64),
    Sym { name: String, overline: bool, sub: Option<Box<Ast>>, sup: Option<Box<Ast>> },
    Sum(Vec<(bool, Ast)>),
    Prod(Vec<Ast>),
    Frac(Box<Ast>, Box<Ast>),
    BigProd { idx: char, lo: Option<Box<Ast>>, hi: Option<Box<Ast>>, skip: Option<char>, body: Box<Ast> },
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) {
        assert!(self.eat(c), "expected `{c}` at token {}: {:?}", self.pos, self.peek());
    }

    fn at_term_end(&self) -> bool {
        matches!(self.peek(), None | Some(Tok::Sym('+' | '-' | ')' | '}' | '=' | ',')))
    }

    fn expr(&mut self) -> Ast {
        let mut terms = Vec::new();
        let mut neg = self.eat('-');
        loop {
            terms.push((neg, self.term()));
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ast::Sum(terms);
            }
        }
    }

    fn term(&mut self) -> Ast {
        let mut fs = Vec::new();
        while !self.at_term_end() {
            fs.push(self.factor());
        }
        Ast::Prod(fs)
    }

    fn group(&mut self) -> Ast {
        self.expect('{');
        let e = self.expr();
        self.expect('}');
        e
    }

    fn script_atom(&mut self) -> Ast {
        match self.next() {
            Tok::Sym('{') => {
                let e = self.expr();
                self.expect('}');
                e
            }
            Tok::Letter(c) => Ast::Sym { name: c.to_string(), overline: false, sub: None, sup: None },
            Tok::Num(n) => Ast::Int(n),
            t => panic!("bad script {t:?}"),
        }
    }

    fn symbol(&mut self, name: String, overline: bool) -> Ast {
        let (mut sub, mut sup) = (None, None);
        loop {
            if self.eat('_') {
                sub = Some(Box::new(self.script_atom()));
            } else if self.eat('^') {
                sup = Some(Box::new(self.script_atom()));
            } else {
                return Ast::Sym { name, overline, sub, sup };
            }
        }
    }

    fn letter(&mut self) -> char {
        match self.next() {
            Tok::Letter(c) => c,
            t => panic!("expected letter, got {t:?}"),
        }
    }

    fn big_prod(&mut self) -> Ast {
        self.expect('_');
        self.expect('{');
        let idx = self.letter();
        let (mut lo, mut skip) = (None, None);
        if self.eat('=') {
            lo = Some(Box::new(self.expr()));
            if self.eat(',') {
                assert_eq!(self.letter(), idx);
            }
        }
        if self.peek() == Some(&Tok::Cmd("neq".into())) {
            self.pos += 1;
            skip = Some(self.letter());
        }
        self.expect('}');
        let hi = if self.eat('^') { Some(Box::new(self.script_atom())) } else { None };
        let body = if self.peek() == Some(&Tok::Sym('(')) {
            let mut fs = Vec::new();
            while self.eat('(') {
                fs.push(self.expr());
                self.expect(')');
            }
            Ast::Prod(fs)
        } else {
            self.factor()
        };
        Ast::BigProd { idx, lo, hi, skip, body: Box::new(body) }
    }

    fn factor(&mut self) -> Ast {
        match self.next() {
            Tok::Sym('(') => {
                let e = self.expr();
                self.expect(')');
                e
            }
            Tok::Sym('{') => {
                let e = self.expr();
                self.expect('}');
                e
            }
            Tok::Num(n) => Ast::Int(n),
            Tok::Letter(c) => self.symbol(c.to_string(), false),
            Tok::Cmd(c) if c == "frac" => {
                let a = self.group();
                let b = self.group();
                Ast::Frac(Box::new(a), Box::new(b))
            }
            Tok::Cmd(c) if c == "prod" => self.big_prod(),
            Tok::Cmd(c) if c == "hbar" => self.symbol("hbar".into(), false),
            Tok::Cmd(c) if c == "overline" => {
                let c = if self.eat('{') {
                    let c = self.letter();
                    self.expect('}');
                    c
                } else {
                    self.letter()
                };
                self.symbol(c.to_string(), true)
            }
            t => panic!("unexpected {t:?}"),
        }
    }
}

/// What a free letter of a display stands for.
#[derive(Clone, Copy, Debug)]
pub enum Bind {
    Int(i64),
    Var(Var),
}

/// `num/den · label^z`, kept unreduced.
#[derive(Clone, Debug)]
struct Val {
    num: Polynomial,
    den: Polynomial,
    label: Option<String>,
    z: i32,
}

impl Val {
    fn plain(num: Polynomial) -> Self {
        Val { num, den: Polynomial::one(), label: None, z: 0 }
    }

    fn mul(self, o: Val, inv: bool) -> Val {
        let (on, od, oz) = if inv { (o.den, o.num, -o.z) } else { (o.num, o.den, o.z) };
        assert!(!od.is_zero(), "division by zero in display");
        Val { num: &self.num * &on, den: &self.den * &od, label: self.label.or(o.label), z: self.z + oz }
    }
}

struct Eval {
    env: HashMap<String, Bind>,
}

impl Eval {
    fn int(&mut self, a: &Ast) -> i64 {
        let v = self.eval(a);
        assert!(v.z == 0);
        let as_int = |p: &Polynomial| -> i64 { p.to_string().parse().unwrap_or_else(|_| panic!("not an integer: {p}")) };
        let (n, d) = (as_int(&v.num), as_int(&v.den));
        assert!(n % d == 0, "not an integer: {n}/{d}");
        n / d
    }

    fn lookup(&self, k: &str) -> Bind {
        *self.env.get(k).unwrap_or_else(|| panic!("unbound `{k}`"))
    }

    fn bind(&self, b: Bind) -> Val {
        Val::plain(match b {
            Bind::Int(n) => Polynomial::int(n),
            Bind::Var(v) => Polynomial::var(v),
        })
    }

    fn eval(&mut self, a: &Ast) -> Val {
        match a {
            Ast::Int(n) => Val::plain(Polynomial::int(*n)),
            Ast::Sum(ts) if ts.len() == 1 && !ts[0].0 => self.eval(&ts[0].1),
            Ast::Sum(ts) => {
                let mut acc = Val::plain(Polynomial::zero());
                for (neg, t) in ts {
                    let v = self.eval(t);
                    assert!(v.z == 0, "Novikov variable inside a sum");
                    let cross = &v.num * &acc.den;
                    acc.num = &acc.num * &v.den;
                    acc.num = if *neg { &acc.num - &cross } else { &acc.num + &cross };
                    acc.den = &acc.den * &v.den;
                }
                acc
            }
            Ast::Prod(fs) => {
                let mut acc = Val::plain(Polynomial::one());
                for f in fs {
                    let v = self.eval(f);
                    acc = acc.mul(v, false);
                }
                acc
            }
            Ast::Frac(n, d) => {
                let n = self.eval(n);
                let d = self.eval(d);
                n.mul(d, true)
            }
            Ast::BigProd { idx, lo, hi, skip, body } => {
                let lo = lo.as_ref().map_or(1, |e| self.int(e));
                let hi = match hi {
                    Some(e) => self.int(e),
                    None => match self.lookup("n") {
                        Bind::Int(n) => n,
                        Bind::Var(_) => panic!("range bound must be an integer"),
                    },
                };
                let skip = skip.map(|c| self.int(&Ast::Sym { name: c.to_string(), overline: false, sub: None, sup: None }));
                let key = idx.to_string();
                let saved = self.env.get(&key).copied();
                let mut acc = Val::plain(Polynomial::one());
                for k in lo..=hi {
                    if Some(k) == skip {
                        continue;
                    }
                    self.env.insert(key.clone(), Bind::Int(k));
                    let v = self.eval(body);
                    acc = acc.mul(v, false);
                }
                match saved {
                    Some(b) => self.env.insert(key, b),
                    None => self.env.remove(&key),
                };
                acc
            }
            Ast::Sym { name, overline, sub, sup } => {
                let sub = sub.as_ref().map(|e| self.int(e));
                let sup = sup.as_ref().map(|e| self.int(e));
                match (name.as_str(), sub) {
                    ("z", _) => {
                        let label = match (overline, sub) {
                            (false, _) => "z".to_string(),
                            (true, None) => "zbar".to_string(),
                            (true, Some(k)) => format!("zbar{k}"),
                        };
                        Val { num: Polynomial::one(), den: Polynomial::one(), label: Some(label), z: 1 }
                    }
                    ("s", Some(i)) => {
                        let i = i as u16;
                        Val::plain(Polynomial::var(match sup {
                            None => Var::S(i),
                            Some(0) => Var::S0(i),
                            Some(1) => Var::S1(i),
                            Some(k) => panic!("no node {k}"),
                        }))
                    }
                    ("a", Some(j)) => Val::plain(Polynomial::var(Var::A(j as u16))),
                    ("hbar", None) => self.bind(self.lookup("hbar")),
                    ("hbar", Some(k)) => Val::plain(match k {
                        1 => Polynomial::var(Var::H1),
                        2 => Polynomial::var(Var::H2),
                        3 => -(Polynomial::var(Var::H1) + Polynomial::var(Var::H2)),
                        _ => panic!("no hbar_{k}"),
                    }),
                    (c, Some(k)) => self.bind(self.lookup(&format!("{c}{k}"))),
                    (c, None) => self.bind(self.lookup(c)),
                }
            }
        }
    }
}

/// The mathematical content of a display line, without delimiters and the trailing range.
fn body(display: &str) -> String {
    let mut s = display.replace('\n', " ");
    s = s.trim().trim_start_matches("\\[").to_string();
    for stop in ["\\,", "\\quad", "\\end", "\\]"] {
        if let Some(p) = s.find(stop) {
            s.truncate(p);
        }
    }
    s.trim().trim_end_matches(',').trim().to_string()
}

/// `(label, N, D)` with the display read as `label = N/D`.
pub fn instantiate(display: &str, env: &[(&str, Bind)]) -> (String, Polynomial, Polynomial) {
    let text = body(display);
    let mut p = Parser { toks: tokenize(&text), pos: 0 };
    let lhs = p.expr();
    p.expect('=');
    let rhs = p.expr();
    assert!(p.pos == p.toks.len(), "trailing tokens in `{text}`");
    let mut ev = Eval { env: env.iter().map(|(k, b)| (k.to_string(), *b)).collect() };
    let (l, r) = (ev.eval(&lhs), ev.eval(&rhs));
    let (with, without) = if l.z != 0 { (l, r) } else { (r, l) };
    assert!(with.z == 1 && without.z == 0, "display not linear in its Novikov variable");
    // label·(with.num/with.den) = without.num/without.den
    (with.label.unwrap(), &without.num * &with.den, &without.den * &with.num)
}
