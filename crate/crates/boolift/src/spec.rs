//! Text grammar for functions and gadgets, shared by the command-line
//! surface and the examples.
//!
//! ```text
//! spec   := NAME ":" params
//!         | "table:" HEX ":" INT [":" HEX]     raw truth table (+ domain)
//!         | "sym:" BITSTRING                    weight spectrum, length n+1
//! NAME   := omb | ombp | addr | ip | and | or | nor | xor | maj | thr
//! gadget := "and" | "xor" | "ip:" INT | "addr:" INT
//!         | "table:" HEX ":" INT ":" INT       table, alice bits, bob bits
//! ```
//!
//! Hex is lowercase, least-significant bit first as one integer, padded to
//! whole digits with zero high bits (`table:e8:3` is MAJ on three bits).
//! Parsing and rendering are mutually inverse on every value both accept.

use crate::bf::{BooleanFunction, Gadget};
use crate::bits::Bits;
use crate::error::{Error, Result};

/// Parsed function description; building defers to the named constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    Omb(u32),
    OmbPartial(u32),
    Addr(u32),
    Ip(u32),
    And(u32),
    Or(u32),
    Nor(u32),
    Xor(u32),
    Maj(u32),
    Thr { k: u32, n: u32 },
    /// Weight spectrum of a symmetric function, `values[w]` on weight `w`.
    Sym(Vec<bool>),
    Table { arity: u32, table: Bits, domain: Option<Bits> },
}

/// Parsed gadget description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetSpec {
    And,
    Xor,
    Ip(u32),
    Addr(u32),
    Table { alice_bits: u32, bob_bits: u32, table: Bits },
}

/// Splits on `:`, remembering each part's byte offset for error messages.
fn parts(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut off = 0;
    for p in text.split(':') {
        out.push((off, p));
        off += p.len() + 1;
    }
    out
}

fn bad(text: &str, offset: usize, what: &str) -> Error {
    Error::BadSpec(format!("`{text}` at offset {offset}: {what}"))
}

fn parse_int(text: &str, part: (usize, &str)) -> Result<u32> {
    part.1
        .parse::<u32>()
        .map_err(|_| bad(text, part.0, &format!("`{}` is not a small integer", part.1)))
}

fn expect_len(text: &str, got: &[(usize, &str)], want: usize) -> Result<()> {
    if got.len() < want {
        return Err(bad(text, text.len(), "missing parameter"));
    }
    if got.len() > want {
        return Err(bad(text, got[want].0, "unexpected extra parameter"));
    }
    Ok(())
}

/// Parses a hex truth table for `arity` variables at `part`.
fn parse_table(text: &str, part: (usize, &str), arity: u32) -> Result<Bits> {
    if arity > 31 {
        return Err(bad(text, part.0, &format!("arity {arity} too large for a table spec")));
    }
    Bits::from_hex(part.1, 1usize << arity)
        .map_err(|e| bad(text, part.0, &format!("{e}")))
}

impl FunctionSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let ps = parts(text);
        let head = ps[0].1;
        match head {
            "omb" | "ombp" | "addr" | "ip" | "and" | "or" | "nor" | "xor" | "maj" => {
                expect_len(text, &ps, 2)?;
                let n = parse_int(text, ps[1])?;
                Ok(match head {
                    "omb" => FunctionSpec::Omb(n),
                    "ombp" => FunctionSpec::OmbPartial(n),
                    "addr" => FunctionSpec::Addr(n),
                    "ip" => FunctionSpec::Ip(n),
                    "and" => FunctionSpec::And(n),
                    "or" => FunctionSpec::Or(n),
                    "nor" => FunctionSpec::Nor(n),
                    "xor" => FunctionSpec::Xor(n),
                    _ => FunctionSpec::Maj(n),
                })
            }
            "thr" => {
                expect_len(text, &ps, 3)?;
                Ok(FunctionSpec::Thr { k: parse_int(text, ps[1])?, n: parse_int(text, ps[2])? })
            }
            "sym" => {
                expect_len(text, &ps, 2)?;
                let (off, s) = ps[1];
                if s.is_empty() {
                    return Err(bad(text, off, "weight spectrum must be non-empty"));
                }
                let mut values = Vec::with_capacity(s.len());
                for (i, ch) in s.char_indices() {
                    match ch {
                        '0' => values.push(false),
                        '1' => values.push(true),
                        _ => return Err(bad(text, off + i, &format!("`{ch}` is not a bit"))),
                    }
                }
                Ok(FunctionSpec::Sym(values))
            }
            "table" => {
                if ps.len() < 3 {
                    return Err(bad(text, text.len(), "table spec needs `table:HEX:n`"));
                }
                if ps.len() > 4 {
                    return Err(bad(text, ps[4].0, "unexpected extra parameter"));
                }
                let arity = parse_int(text, ps[2])?;
                let table = parse_table(text, ps[1], arity)?;
                let domain =
                    if ps.len() == 4 { Some(parse_table(text, ps[3], arity)?) } else { None };
                Ok(FunctionSpec::Table { arity, table, domain })
            }
            _ => Err(bad(text, 0, &format!("unknown function name `{head}`"))),
        }
    }

    /// Canonical text form; `parse` inverts it.
    pub fn render(&self) -> String {
        match self {
            FunctionSpec::Omb(n) => format!("omb:{n}"),
            FunctionSpec::OmbPartial(n) => format!("ombp:{n}"),
            FunctionSpec::Addr(n) => format!("addr:{n}"),
            FunctionSpec::Ip(b) => format!("ip:{b}"),
            FunctionSpec::And(n) => format!("and:{n}"),
            FunctionSpec::Or(n) => format!("or:{n}"),
            FunctionSpec::Nor(n) => format!("nor:{n}"),
            FunctionSpec::Xor(n) => format!("xor:{n}"),
            FunctionSpec::Maj(n) => format!("maj:{n}"),
            FunctionSpec::Thr { k, n } => format!("thr:{k}:{n}"),
            FunctionSpec::Sym(values) => {
                let bits: String = values.iter().map(|&v| if v { '1' } else { '0' }).collect();
                format!("sym:{bits}")
            }
            FunctionSpec::Table { arity, table, domain } => match domain {
                None => format!("table:{}:{arity}", table.to_hex()),
                Some(d) => format!("table:{}:{arity}:{}", table.to_hex(), d.to_hex()),
            },
        }
    }

    pub fn build(&self) -> Result<BooleanFunction> {
        match self {
            FunctionSpec::Omb(n) => BooleanFunction::omb(*n),
            FunctionSpec::OmbPartial(n) => BooleanFunction::omb_partial(*n),
            FunctionSpec::Addr(n) => BooleanFunction::addr(*n),
            FunctionSpec::Ip(b) => BooleanFunction::inner_product(*b),
            FunctionSpec::And(n) => BooleanFunction::and(*n),
            FunctionSpec::Or(n) => BooleanFunction::or(*n),
            FunctionSpec::Nor(n) => BooleanFunction::nor(*n),
            FunctionSpec::Xor(n) => BooleanFunction::xor(*n),
            FunctionSpec::Maj(n) => BooleanFunction::maj(*n),
            FunctionSpec::Thr { k, n } => BooleanFunction::threshold(*k, *n),
            FunctionSpec::Sym(values) => BooleanFunction::symmetric(values),
            FunctionSpec::Table { arity, table, domain } => match domain {
                None => BooleanFunction::new_total(*arity, table.clone()),
                Some(d) => BooleanFunction::new_partial(*arity, table.clone(), d.clone()),
            },
        }
    }
}

impl GadgetSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let ps = parts(text);
        match ps[0].1 {
            "and" => {
                expect_len(text, &ps, 1)?;
                Ok(GadgetSpec::And)
            }
            "xor" => {
                expect_len(text, &ps, 1)?;
                Ok(GadgetSpec::Xor)
            }
            "ip" => {
                expect_len(text, &ps, 2)?;
                Ok(GadgetSpec::Ip(parse_int(text, ps[1])?))
            }
            "addr" => {
                expect_len(text, &ps, 2)?;
                Ok(GadgetSpec::Addr(parse_int(text, ps[1])?))
            }
            "table" => {
                expect_len(text, &ps, 4)?;
                let alice_bits = parse_int(text, ps[2])?;
                let bob_bits = parse_int(text, ps[3])?;
                let total = alice_bits.checked_add(bob_bits).filter(|&t| t <= 20);
                let Some(total) = total else {
                    return Err(bad(text, ps[2].0, "gadget sides must total at most 20 bits"));
                };
                let table = parse_table(text, ps[1], total)?;
                Ok(GadgetSpec::Table { alice_bits, bob_bits, table })
            }
            other => Err(bad(text, 0, &format!("unknown gadget name `{other}`"))),
        }
    }

    /// Canonical text form; `parse` inverts it.
    pub fn render(&self) -> String {
        match self {
            GadgetSpec::And => "and".into(),
            GadgetSpec::Xor => "xor".into(),
            GadgetSpec::Ip(b) => format!("ip:{b}"),
            GadgetSpec::Addr(b) => format!("addr:{b}"),
            GadgetSpec::Table { alice_bits, bob_bits, table } => {
                format!("table:{}:{alice_bits}:{bob_bits}", table.to_hex())
            }
        }
    }

    pub fn build(&self) -> Result<Gadget> {
        match self {
            GadgetSpec::And => Ok(Gadget::and1()),
            GadgetSpec::Xor => Ok(Gadget::xor1()),
            GadgetSpec::Ip(b) => Gadget::ip(*b),
            GadgetSpec::Addr(b) => Gadget::addr(*b),
            GadgetSpec::Table { alice_bits, bob_bits, table } => {
                Gadget::new(*alice_bits, *bob_bits, table.clone())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_specs_parse() {
        assert_eq!(FunctionSpec::parse("omb:5").unwrap(), FunctionSpec::Omb(5));
        assert_eq!(FunctionSpec::parse("thr:2:3").unwrap(), FunctionSpec::Thr { k: 2, n: 3 });
        assert_eq!(
            FunctionSpec::parse("sym:0101").unwrap(),
            FunctionSpec::Sym(vec![false, true, false, true])
        );
    }

    #[test]
    fn table_spec_decodes_majority() {
        let f = FunctionSpec::parse("table:e8:3").unwrap().build().unwrap();
        assert_eq!(f.table(), BooleanFunction::maj(3).unwrap().table());
        assert!(f.is_total());
    }

    #[test]
    fn spectrum_spec_builds_parity() {
        let f = FunctionSpec::parse("sym:0101").unwrap().build().unwrap();
        assert_eq!(f.table(), BooleanFunction::xor(3).unwrap().table());
    }

    #[test]
    fn partial_table_round_trips_through_text() {
        let f = FunctionSpec::parse("table:41:3:51").unwrap().build().unwrap();
        assert_eq!(f.table_string(), BooleanFunction::omb_partial(3).unwrap().table_string());
    }

    #[test]
    fn render_parse_round_trip() {
        let specs = [
            "omb:5", "ombp:3", "addr:4", "ip:2", "and:2", "or:4", "nor:2", "xor:3", "maj:3",
            "thr:2:3", "sym:0110", "table:e8:3", "table:41:3:51",
        ];
        for text in specs {
            let spec = FunctionSpec::parse(text).unwrap();
            assert_eq!(spec.render(), text);
            assert_eq!(FunctionSpec::parse(&spec.render()).unwrap(), spec);
            spec.build().unwrap();
        }
    }

    #[test]
    fn parse_errors_carry_offsets() {
        for (text, needle) in [
            ("ombx:3", "unknown function name"),
            ("omb", "missing parameter"),
            ("omb:x", "not a small integer"),
            ("omb:3:4", "offset 6"),
            ("table:e:3", "expected 2"),
            ("table:f:1", "past the table length"),
            ("sym:012", "offset 6"),
            ("thr:2", "missing parameter"),
            ("table:ff:40", "too large"),
        ] {
            let err = FunctionSpec::parse(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text}: {err}");
        }
    }

    #[test]
    fn gadget_specs_parse_and_build() {
        assert_eq!(GadgetSpec::parse("and").unwrap(), GadgetSpec::And);
        assert_eq!(GadgetSpec::parse("ip:2").unwrap(), GadgetSpec::Ip(2));
        assert_eq!(GadgetSpec::parse("addr:4").unwrap(), GadgetSpec::Addr(4));
        let custom = GadgetSpec::parse("table:8:1:1").unwrap().build().unwrap();
        let and = Gadget::and1();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(custom.evaluate(x, y), and.evaluate(x, y));
            }
        }
        assert!(GadgetSpec::parse("nand").is_err());
        assert!(GadgetSpec::parse("and:1").is_err());
        assert!(GadgetSpec::parse("table:8:1").is_err());
    }

    #[test]
    fn gadget_render_round_trip() {
        for text in ["and", "xor", "ip:3", "addr:2", "table:8:1:1"] {
            let spec = GadgetSpec::parse(text).unwrap();
            assert_eq!(spec.render(), text);
            assert_eq!(GadgetSpec::parse(&spec.render()).unwrap(), spec);
        }
    }
}
