//! The input program grammar:
//!
//! ```text
//! file      := stmt+
//! stmt      := ringdecl | idealdecl | moduledecl | primedecl | mapdecl
//! ringdecl  := "ring" field "[" ident {"," ident} "]" ";"
//! field     := "QQ" | "GF(" int ")"
//! idealdecl := "ideal" ident "=" poly {"," poly} ";"
//! moduledecl:= "module" ident "=" ("quot" ident | "coker" "[" row {"," row} "]") ";"
//! row       := "[" poly {"," poly} "]"
//! primedecl := "prime" ident "=" poly {"," poly} ";"
//! mapdecl   := "map" ident ":" ident "->" poly {"," ident "->" poly} ";"
//! ```
//!
//! `#` starts a line comment. The ring declaration must come first and
//! appear exactly once; all declared names share one namespace. Matrix rows
//! are presentation-matrix rows: column j across the rows is relation j.

use std::fmt;

use depthctl_core::error::{Error, Result};
use depthctl_core::groebner::IdealHandle;
use depthctl_core::modalg::PolyMatrix;
use depthctl_core::polyring::{parse_poly, FieldSpec, MonomialOrder, Poly, RingCtx};
use depthctl_core::primelib::{Certificate, PrimeIdeal};

#[derive(Debug, Clone)]
pub enum ModuleDecl {
    Quot(String),
    Coker(PolyMatrix),
}

#[derive(Debug, Clone)]
pub enum Item {
    Ideal(IdealHandle),
    Module(ModuleDecl),
    Prime(PrimeIdeal),
    /// Source-variable names paired with image polynomials in this ring.
    Map(Vec<(String, Poly)>),
}

#[derive(Debug, Clone)]
pub struct InputProgram {
    pub ring: RingCtx,
    pub items: Vec<(String, Item)>,
}

impl InputProgram {
    pub fn lookup(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, item)| item)
    }

    pub fn ideal(&self, name: &str) -> Result<&IdealHandle> {
        match self.lookup(name) {
            Some(Item::Ideal(i)) => Ok(i),
            _ => Err(Error::UnknownVariable(format!("ideal `{name}`"))),
        }
    }

    pub fn module(&self, name: &str) -> Result<&ModuleDecl> {
        match self.lookup(name) {
            Some(Item::Module(m)) => Ok(m),
            _ => Err(Error::UnknownVariable(format!("module `{name}`"))),
        }
    }

    pub fn map(&self, name: &str) -> Result<&Vec<(String, Poly)>> {
        match self.lookup(name) {
            Some(Item::Map(m)) => Ok(m),
            _ => Err(Error::UnknownVariable(format!("map `{name}`"))),
        }
    }
}

struct Scanner<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner { src, bytes: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::SyntaxError { line: self.line, col: self.col, msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(b' ' | b'\t' | b'\r' | b'\n') => {
                    self.bump();
                }
                Some(b'#') => {
                    while !matches!(self.peek(), None | Some(b'\n')) {
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.pos >= self.bytes.len()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_trivia();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_trivia();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_trivia();
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'_') {
            return Err(self.err("expected an identifier"));
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.bump();
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_trivia();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("integer too large"))
    }

    /// Consumes text up to (not including) the next top-level `,`, `;`, or
    /// `]`, balancing parentheses, and parses it as a polynomial.
    fn poly(&mut self, ring: &RingCtx) -> Result<Poly> {
        self.skip_trivia();
        let (sl, sc) = (self.line, self.col);
        let start = self.pos;
        let mut depth = 0usize;
        loop {
            match self.peek() {
                None => break,
                Some(b'(') => {
                    depth += 1;
                    self.bump();
                }
                Some(b')') => {
                    if depth == 0 {
                        return Err(self.err("unbalanced `)`"));
                    }
                    depth -= 1;
                    self.bump();
                }
                Some(b',') | Some(b';') | Some(b']') if depth == 0 => break,
                Some(b'#') => {
                    while !matches!(self.peek(), None | Some(b'\n')) {
                        self.bump();
                    }
                }
                _ => {
                    self.bump();
                }
            }
        }
        let text = &self.src[start..self.pos];
        if text.trim().is_empty() {
            return Err(Error::SyntaxError { line: sl, col: sc, msg: "expected a polynomial".into() });
        }
        parse_poly(ring, text).map_err(|e| match e {
            Error::SyntaxError { line, col, msg } => Error::SyntaxError {
                line: sl + line - 1,
                col: if line == 1 { sc + col - 1 } else { col },
                msg,
            },
            other => other,
        })
    }
}

fn parse_field(sc: &mut Scanner) -> Result<FieldSpec> {
    let name = sc.ident()?;
    match name.as_str() {
        "QQ" => Ok(FieldSpec::Rationals),
        "GF" => {
            sc.expect(b'(')?;
            let p = sc.uint()?;
            sc.expect(b')')?;
            FieldSpec::prime_field(p)
        }
        other => Err(sc.err(format!("expected `QQ` or `GF(p)`, found `{other}`"))),
    }
}

/// Parses a full program. The ring declaration must come first.
pub fn parse_input(text: &str) -> Result<InputProgram> {
    let mut sc = Scanner::new(text);
    sc.skip_trivia();

    // ring declaration first
    let first = sc.ident()?;
    if first != "ring" {
        return Err(sc.err(format!("the ring declaration must come first, found `{first}`")));
    }
    let field = parse_field(&mut sc)?;
    sc.expect(b'[')?;
    let mut vars = vec![sc.ident()?];
    while sc.eat(b',') {
        vars.push(sc.ident()?);
    }
    sc.expect(b']')?;
    sc.expect(b';')?;
    let ring = RingCtx::new(field, vars, MonomialOrder::Grevlex)?;

    let mut program = InputProgram { ring: ring.clone(), items: Vec::new() };
    let declare = |program: &mut InputProgram, name: String, item: Item| -> Result<()> {
        if program.lookup(&name).is_some() {
            return Err(Error::DuplicateName(name));
        }
        program.items.push((name, item));
        Ok(())
    };

    while !sc.at_end() {
        let kw = sc.ident()?;
        match kw.as_str() {
            "ring" => return Err(sc.err("only one ring declaration is allowed")),
            "ideal" | "prime" => {
                let name = sc.ident()?;
                sc.expect(b'=')?;
                let mut gens = vec![sc.poly(&ring)?];
                while sc.eat(b',') {
                    gens.push(sc.poly(&ring)?);
                }
                sc.expect(b';')?;
                let handle = IdealHandle::new(&ring, gens);
                let item = if kw == "ideal" {
                    Item::Ideal(handle)
                } else {
                    Item::Prime(certify_user_prime(handle)?)
                };
                declare(&mut program, name, item)?;
            }
            "module" => {
                let name = sc.ident()?;
                sc.expect(b'=')?;
                let which = sc.ident()?;
                let decl = match which.as_str() {
                    "quot" => {
                        let target = sc.ident()?;
                        program.ideal(&target)?;
                        ModuleDecl::Quot(target)
                    }
                    "coker" => {
                        sc.expect(b'[')?;
                        let mut rows: Vec<Vec<Poly>> = Vec::new();
                        loop {
                            sc.expect(b'[')?;
                            let mut row = vec![sc.poly(&ring)?];
                            while sc.eat(b',') {
                                row.push(sc.poly(&ring)?);
                            }
                            sc.expect(b']')?;
                            rows.push(row);
                            if !sc.eat(b',') {
                                break;
                            }
                        }
                        sc.expect(b']')?;
                        let cols = rows[0].len();
                        if rows.iter().any(|r| r.len() != cols) {
                            return Err(sc.err("matrix rows have unequal lengths"));
                        }
                        let mut entries = Vec::with_capacity(rows.len() * cols);
                        for row in &rows {
                            entries.extend(row.iter().cloned());
                        }
                        ModuleDecl::Coker(PolyMatrix::new(&ring, rows.len(), cols, entries))
                    }
                    other => return Err(sc.err(format!("expected `quot` or `coker`, found `{other}`"))),
                };
                sc.expect(b';')?;
                declare(&mut program, name, Item::Module(decl))?;
            }
            "map" => {
                let name = sc.ident()?;
                sc.expect(b':')?;
                let mut pairs = Vec::new();
                loop {
                    let var = sc.ident()?;
                    sc.expect(b'-')?;
                    sc.expect(b'>')?;
                    let img = sc.poly(&ring)?;
                    pairs.push((var, img));
                    if !sc.eat(b',') {
                        break;
                    }
                }
                sc.expect(b';')?;
                declare(&mut program, name, Item::Map(pairs))?;
            }
            other => return Err(sc.err(format!("unknown declaration `{other}`"))),
        }
    }
    Ok(program)
}

/// User primes are trusted, except that monomial ones are verified to be
/// variable-generated.
fn certify_user_prime(ideal: IdealHandle) -> Result<PrimeIdeal> {
    if ideal.is_monomial()? {
        let ok = ideal
            .groebner_basis()?
            .iter()
            .all(|g| g.lm().map(|m| m.total_degree() == 1).unwrap_or(false));
        if !ok {
            return Err(Error::NotAnIsomorphismWitness(
                "declared monomial prime is not generated by variables".into(),
            ));
        }
        return PrimeIdeal::certified(ideal, Certificate::MonomialCombinatorial);
    }
    PrimeIdeal::certified(ideal, Certificate::CallerAsserted)
}

/// Builds the coker presentation of a module declaration, together with the
/// intrinsic quotient ideal (the defining ideal for quot modules, zero for
/// coker modules).
pub fn module_data(
    program: &InputProgram,
    decl: &ModuleDecl,
) -> Result<(depthctl_core::modalg::FPModule, IdealHandle)> {
    let ring = &program.ring;
    match decl {
        ModuleDecl::Quot(name) => {
            let ideal = program.ideal(name)?;
            Ok((
                depthctl_core::modalg::FPModule::quotient_ring(ring, ideal),
                ideal.clone(),
            ))
        }
        ModuleDecl::Coker(pres) => Ok((
            depthctl_core::modalg::FPModule::new(ring, pres.rows(), pres.clone()),
            IdealHandle::zero(ring),
        )),
    }
}

impl fmt::Display for InputProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring {}[", self.ring.field())?;
        for (i, v) in self.ring.vars().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        writeln!(f, "];")?;
        for (name, item) in &self.items {
            match item {
                Item::Ideal(ideal) => {
                    let gens: Vec<String> = if ideal.gens().is_empty() {
                        vec!["0".to_string()]
                    } else {
                        ideal.gens().iter().map(|g| g.canonical_string()).collect()
                    };
                    writeln!(f, "ideal {name} = {};", gens.join(", "))?;
                }
                Item::Prime(p) => {
                    let gens: Vec<String> = if p.ideal().gens().is_empty() {
                        vec!["0".to_string()]
                    } else {
                        p.ideal().gens().iter().map(|g| g.canonical_string()).collect()
                    };
                    writeln!(f, "prime {name} = {};", gens.join(", "))?;
                }
                Item::Module(ModuleDecl::Quot(target)) => {
                    writeln!(f, "module {name} = quot {target};")?;
                }
                Item::Module(ModuleDecl::Coker(m)) => {
                    let rows: Vec<String> = (0..m.rows())
                        .map(|i| {
                            let cells: Vec<String> = (0..m.cols())
                                .map(|j| m.entry(i, j).canonical_string())
                                .collect();
                            format!("[{}]", cells.join(", "))
                        })
                        .collect();
                    writeln!(f, "module {name} = coker [{}];", rows.join(", "))?;
                }
                Item::Map(pairs) => {
                    let parts: Vec<String> = pairs
                        .iter()
                        .map(|(v, img)| format!("{v} -> {}", img.canonical_string()))
                        .collect();
                    writeln!(f, "map {name}: {};", parts.join(", "))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_programs() {
        let p = parse_input("ring QQ[x,y]; ideal I = x;").unwrap();
        assert_eq!(p.items.len(), 1);
        assert!(p.ideal("I").is_ok());

        let p = parse_input("ring GF(32003)[x]; ideal I = x^2 + 1;").unwrap();
        assert_eq!(p.ring.field(), FieldSpec::prime_field(32003).unwrap());
    }

    #[test]
    fn ring_must_come_first() {
        let err = parse_input("ideal I = x; ring QQ[x];").unwrap_err();
        assert!(matches!(err, Error::SyntaxError { .. }));
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = parse_input("ring QQ[x]; ideal I = x; ideal I = x;").unwrap_err();
        assert!(matches!(err, Error::DuplicateName(_)));
    }

    #[test]
    fn unknown_variable_in_poly() {
        let err = parse_input("ring QQ[x]; ideal I = y;").unwrap_err();
        assert!(matches!(err, Error::UnknownVariable(_)));
    }

    #[test]
    fn comments_and_modules() {
        let text = "# a program\nring QQ[x, y]; # the ring\nideal J = x*y;\nmodule M = quot J;\nmodule N = coker [[x, 0], [0, y]];\nprime P = x;\nmap phi: t -> x^2, x -> x, y -> y;\n";
        let p = parse_input(text).unwrap();
        assert_eq!(p.items.len(), 5);
        assert!(matches!(p.module("M").unwrap(), ModuleDecl::Quot(_)));
        assert!(matches!(p.module("N").unwrap(), ModuleDecl::Coker(_)));
        assert_eq!(p.map("phi").unwrap().len(), 3);
    }

    #[test]
    fn print_parse_roundtrip() {
        let text = "ring QQ[x, y];\nideal J = x*y;\nmodule M = quot J;\nmodule N = coker [[x, 0], [0, y]];\nprime P = x;\nmap phi: x -> y, y -> x;\n";
        let p = parse_input(text).unwrap();
        let printed = p.to_string();
        let reparsed = parse_input(&printed).unwrap();
        assert_eq!(printed, reparsed.to_string());
        assert_eq!(printed, text);
    }

    #[test]
    fn monomial_primes_verified() {
        assert!(parse_input("ring QQ[x,y]; prime P = x*y;").is_err());
        assert!(parse_input("ring QQ[x,y]; prime P = x, y;").is_ok());
    }
}
