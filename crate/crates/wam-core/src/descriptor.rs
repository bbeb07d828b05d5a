//! The group descriptor mini-language used by the CLI and the cache:
//!
//! ```text
//! spec  := Name '(' args ')'                 named construction
//!        | 'Perm[' gen (',' gen)* ']'        explicit generators
//!        | 'Direct(' spec ',' spec ')'       direct product
//!        | 'Quotient(' spec ';' gen,* ')'    quotient by a normal subgroup
//! gen   := cycle+                            e.g. (1,2)(3,4)
//! cycle := '(' int (',' int)* ')' | '()'     1-based points
//! ```
//!
//! Whitespace is ignored everywhere. Parsed specs render back to a canonical
//! string and round-trip through it.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::named::NamedGroup;
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Named(NamedGroup),
    /// Explicit generators; the degree is the largest point mentioned.
    Explicit { degree: usize, gens: Vec<Perm> },
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    /// Quotient of the inner spec by the normal closure-checked subgroup
    /// generated by the listed permutations (cycles over the parent's
    /// points).
    Quotient(Box<GroupSpec>, Vec<Vec<Vec<u16>>>),
}

impl GroupSpec {
    pub fn render(&self) -> String {
        match self {
            GroupSpec::Named(n) => n.render(),
            GroupSpec::Explicit { gens, .. } => {
                if gens.is_empty() {
                    return "Perm[()]".to_string();
                }
                let body: Vec<String> = gens.iter().map(|g| g.cycle_string()).collect();
                format!("Perm[{}]", body.join(","))
            }
            GroupSpec::Direct(a, b) => format!("Direct({},{})", a.render(), b.render()),
            GroupSpec::Quotient(inner, gens) => {
                let body: Vec<String> = gens
                    .iter()
                    .map(|cycles| {
                        if cycles.is_empty() {
                            "()".to_string()
                        } else {
                            cycles
                                .iter()
                                .map(|c| {
                                    let pts: Vec<String> =
                                        c.iter().map(|p| (p + 1).to_string()).collect();
                                    format!("({})", pts.join(","))
                                })
                                .collect::<Vec<_>>()
                                .join("")
                        }
                    })
                    .collect();
                format!("Quotient({};{})", inner.render(), body.join(","))
            }
        }
    }

    /// Builds the permutation group, enforcing the size cap everywhere.
    pub fn build(&self, cap: u64) -> Result<PermGroup> {
        match self {
            GroupSpec::Named(n) => n.construct(cap),
            GroupSpec::Explicit { degree, gens } => {
                PermGroup::from_generators(*degree, gens.clone(), cap)
            }
            GroupSpec::Direct(a, b) => {
                let ga = a.build(cap)?;
                let gb = b.build(cap)?;
                ga.direct_product(&gb, cap)
            }
            GroupSpec::Quotient(inner, gen_cycles) => {
                let g = inner.build(cap)?;
                let gens: Vec<Perm> = gen_cycles
                    .iter()
                    .map(|cycles| Perm::from_cycles(g.degree(), cycles))
                    .collect::<Result<_>>()?;
                let n = PermGroup::from_generators(g.degree(), gens, cap)?;
                g.quotient(&n)
            }
        }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected '{}'", byte as char))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .text
            .get(self.pos)
            .map(|b| b.is_ascii_alphanumeric())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a name");
        }
        Ok(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self
            .text
            .get(self.pos)
            .map(|b| b.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a number");
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(Error::Parse {
                pos: start,
                msg: "number too large".into(),
            })
    }

    /// One parenthesized cycle; `()` yields an empty cycle.
    fn cycle(&mut self) -> Result<Vec<u16>> {
        self.expect(b'(')?;
        let mut points = Vec::new();
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(points);
        }
        loop {
            let p = self.integer()?;
            if p == 0 || p > u16::MAX as u64 {
                return self.error("points are 1-based and small");
            }
            points.push((p - 1) as u16);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(points);
                }
                _ => return self.error("expected ',' or ')' in cycle"),
            }
        }
    }

    /// A generator: one or more adjacent cycles.
    fn generator(&mut self) -> Result<Vec<Vec<u16>>> {
        let mut cycles = vec![self.cycle()?];
        while self.peek() == Some(b'(') {
            cycles.push(self.cycle()?);
        }
        cycles.retain(|c| c.len() > 1);
        // Check for repeated points across the whole generator.
        let mut seen = std::collections::HashSet::new();
        for c in &cycles {
            for &p in c {
                if !seen.insert(p) {
                    return self.error(format!("repeated point {} in cycle notation", p + 1));
                }
            }
        }
        Ok(cycles)
    }

    fn generator_list(&mut self, terminator: u8) -> Result<Vec<Vec<Vec<u16>>>> {
        let mut gens = Vec::new();
        if self.peek() == Some(terminator) {
            return Ok(gens);
        }
        loop {
            gens.push(self.generator()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(t) if t == terminator => return Ok(gens),
                _ => return self.error("expected ',' or end of generator list"),
            }
        }
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let name = self.ident()?;
        match name.as_str() {
            "Perm" => {
                self.expect(b'[')?;
                let gen_cycles = self.generator_list(b']')?;
                self.expect(b']')?;
                let degree = gen_cycles
                    .iter()
                    .flat_map(|g| g.iter().flat_map(|c| c.iter()))
                    .map(|&p| p as usize + 1)
                    .max()
                    .unwrap_or(1);
                let gens = gen_cycles
                    .iter()
                    .map(|cycles| Perm::from_cycles(degree, cycles))
                    .collect::<Result<Vec<Perm>>>()?
                    .into_iter()
                    .filter(|p| !p.is_identity())
                    .collect();
                Ok(GroupSpec::Explicit { degree, gens })
            }
            "Direct" => {
                self.expect(b'(')?;
                let a = self.spec()?;
                self.expect(b',')?;
                let b = self.spec()?;
                self.expect(b')')?;
                Ok(GroupSpec::Direct(Box::new(a), Box::new(b)))
            }
            "Quotient" => {
                self.expect(b'(')?;
                let inner = self.spec()?;
                self.expect(b';')?;
                let gens = self.generator_list(b')')?;
                self.expect(b')')?;
                Ok(GroupSpec::Quotient(Box::new(inner), gens))
            }
            "Sym" | "Alt" | "Cyclic" | "Dihedral" => {
                self.expect(b'(')?;
                let n = self.integer()?;
                self.expect(b')')?;
                if n == 0 || n > 4096 {
                    return self.error("argument out of range");
                }
                Ok(GroupSpec::Named(match name.as_str() {
                    "Sym" => NamedGroup::Sym(n as u32),
                    "Alt" => NamedGroup::Alt(n as u32),
                    "Cyclic" => NamedGroup::Cyclic(n as u32),
                    _ => NamedGroup::Dihedral(n as u32),
                }))
            }
            "SL" | "GL" => {
                self.expect(b'(')?;
                let dim = self.integer()?;
                self.expect(b',')?;
                let q = self.integer()?;
                self.expect(b')')?;
                match (name.as_str(), dim) {
                    ("SL", 2) => Ok(GroupSpec::Named(NamedGroup::Sl2(q))),
                    ("SL", 3) => Ok(GroupSpec::Named(NamedGroup::Sl3(q))),
                    ("GL", 2) => Ok(GroupSpec::Named(NamedGroup::Gl2(q))),
                    _ => Err(Error::UnsupportedDescriptor(format!("{name}({dim},{q})"))),
                }
            }
            other => Err(Error::UnsupportedDescriptor(other.to_string())),
        }
    }
}

/// Parses a group descriptor; errors carry the byte position.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let mut parser = Parser {
        text: text.as_bytes(),
        pos: 0,
    };
    let spec = parser.spec()?;
    parser.skip_ws();
    if parser.pos != parser.text.len() {
        return parser.error("trailing input after descriptor");
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_SIZE_CAP;

    #[test]
    fn named_specs() {
        let spec = parse_group_spec("Alt(5)").unwrap();
        assert_eq!(spec, GroupSpec::Named(NamedGroup::Alt(5)));
        let g = spec.build(DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(g.order(), 60);
        assert_eq!(g.degree(), 5);
        assert_eq!(
            parse_group_spec(" SL( 2 , 3 ) ").unwrap(),
            GroupSpec::Named(NamedGroup::Sl2(3))
        );
    }

    #[test]
    fn explicit_generators() {
        let spec = parse_group_spec("Perm[(1,2),(1,2,3)]").unwrap();
        let g = spec.build(DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(g.order(), 6);
        // Multi-cycle generator.
        let spec = parse_group_spec("Perm[(1,2)(3,4)]").unwrap();
        let g = spec.build(DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.degree(), 4);
    }

    #[test]
    fn repeated_point_rejected_with_position() {
        let err = parse_group_spec("Perm[(1,1,2)]").unwrap_err();
        match err {
            Error::Parse { msg, .. } => assert!(msg.contains("repeated point")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_constructor() {
        assert!(matches!(
            parse_group_spec("Sporadic(1)"),
            Err(Error::UnsupportedDescriptor(_))
        ));
        assert!(matches!(
            parse_group_spec("SL(4,2)"),
            Err(Error::UnsupportedDescriptor(_))
        ));
    }

    #[test]
    fn direct_and_quotient() {
        let spec = parse_group_spec("Direct(Cyclic(2),Cyclic(3))").unwrap();
        let g = spec.build(DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        // Sym(3) / Alt(3) has order 2.
        let spec = parse_group_spec("Quotient(Sym(3);(1,2,3))").unwrap();
        let g = spec.build(DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn quotient_rejects_non_normal_generators() {
        let spec = parse_group_spec("Quotient(Sym(3);(1,2))").unwrap();
        assert!(matches!(spec.build(DEFAULT_SIZE_CAP), Err(Error::NotNormal)));
    }

    #[test]
    fn canonical_roundtrip() {
        let cases = [
            "Sym(4)",
            "Alt(6)",
            "Cyclic(12)",
            "Dihedral(8)",
            "SL(2,3)",
            "GL(2,3)",
            "SL(3,2)",
            "Perm[(1,2),(1,2,3)]",
            "Perm[(1,2)(3,4),(1,3)(2,4)]",
            "Perm[()]",
            "Direct(SL(2,3),Cyclic(2))",
            "Quotient(SL(2,3);(1,2)(3,6)(4,8)(5,7))",
        ];
        for text in cases {
            let spec = parse_group_spec(text).unwrap();
            let rendered = spec.render();
            let reparsed = parse_group_spec(&rendered).unwrap();
            assert_eq!(spec, reparsed, "roundtrip of {text}");
            assert_eq!(rendered, parse_group_spec(&rendered).unwrap().render());
        }
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_group_spec("Direct( SL(2, 3) ,\n Cyclic( 2 ) )").unwrap();
        let b = parse_group_spec("Direct(SL(2,3),Cyclic(2))").unwrap();
        assert_eq!(a, b);
    }
}
