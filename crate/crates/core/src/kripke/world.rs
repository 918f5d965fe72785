use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Which world of a gadget frame `F_m` / `F_m⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetPart {
    /// `a_i`, `0 ≤ i ≤ m`.
    A(u32),
    B,
    C,
}

/// Identifier of a world.
///
/// Quantifier-tree worlds are `Base`, worlds of gadget frames (possibly
/// attached below a host world) are `Gadget`. `Named` covers identifiers
/// read from files that follow neither tag format.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WorldId {
    Base {
        level: u32,
        assignment: BTreeSet<u32>,
        serial: u32,
    },
    Gadget {
        m: u32,
        part: GadgetPart,
        host: Option<Box<WorldId>>,
    },
    Named(String),
}

impl WorldId {
    pub fn base(level: u32, assignment: BTreeSet<u32>, serial: u32) -> Self {
        WorldId::Base {
            level,
            assignment,
            serial,
        }
    }

    pub fn gadget(m: u32, part: GadgetPart, host: Option<&WorldId>) -> Self {
        WorldId::Gadget {
            m,
            part,
            host: host.map(|h| Box::new(h.clone())),
        }
    }

    pub fn is_base(&self) -> bool {
        matches!(self, WorldId::Base { .. })
    }

    pub fn level(&self) -> Option<u32> {
        match self {
            WorldId::Base { level, .. } => Some(*level),
            _ => None,
        }
    }
}

impl fmt::Display for GadgetPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetPart::A(i) => write!(f, "a{i}"),
            GadgetPart::B => f.write_str("b"),
            GadgetPart::C => f.write_str("c"),
        }
    }
}

impl fmt::Display for WorldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WorldId::Base {
                level,
                assignment,
                serial,
            } => {
                write!(f, "base:L{level}:{{")?;
                for (k, v) in assignment.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "}}:#{serial}")
            }
            WorldId::Gadget { m, part, host } => {
                write!(f, "gadget:m{m}:{part}")?;
                if let Some(h) = host {
                    write!(f, "@{h}")?;
                }
                Ok(())
            }
            WorldId::Named(s) => f.write_str(s),
        }
    }
}

fn parse_base(s: &str) -> Option<WorldId> {
    let rest = s.strip_prefix("base:L")?;
    let (level, rest) = rest.split_once(":{")?;
    let (set, serial) = rest.split_once("}:#")?;
    let assignment = if set.is_empty() {
        BTreeSet::new()
    } else {
        set.split(',')
            .map(|x| x.parse::<u32>().ok())
            .collect::<Option<BTreeSet<u32>>>()?
    };
    Some(WorldId::Base {
        level: level.parse().ok()?,
        assignment,
        serial: serial.parse().ok()?,
    })
}

fn parse_gadget(s: &str) -> Option<WorldId> {
    let rest = s.strip_prefix("gadget:m")?;
    let (m, rest) = rest.split_once(':')?;
    let (part, host) = match rest.split_once('@') {
        Some((p, h)) => (p, Some(h)),
        None => (rest, None),
    };
    let part = match part {
        "b" => GadgetPart::B,
        "c" => GadgetPart::C,
        a => GadgetPart::A(a.strip_prefix('a')?.parse().ok()?),
    };
    let host = match host {
        Some(h) => Some(Box::new(parse_base(h).or_else(|| parse_gadget(h))?)),
        None => None,
    };
    Some(WorldId::Gadget {
        m: m.parse().ok()?,
        part,
        host,
    })
}

impl FromStr for WorldId {
    type Err = std::convert::Infallible;

    /// Never fails: text that is not a well-formed tag becomes `Named`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(parse_base(s)
            .or_else(|| parse_gadget(s))
            .unwrap_or_else(|| WorldId::Named(s.to_string())))
    }
}
