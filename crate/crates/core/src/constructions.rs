//! Named group families and the textual group spec grammar.
//!
//! ```text
//! cyclic:<n> | abelian:<n1>x<n2>x... | extraspecial:p=<p>,exp=<p|p2>
//! wreath:p=<p> | <spec>*<spec> | perm:degree=<n>;gens=<cycles>;<cycles>...
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{generate_group_with_cap, subgroup_generated, FiniteGroup, Subgroup, DEFAULT_CAP};
use crate::numtheory::is_prime;
use crate::perm::{parse_cycle_list, Permutation};

/// The quaternion group of order 8 as a regular permutation group.
pub const Q8_SPEC: &str = "perm:degree=8;gens=(0 1 3 6)(2 5 7 4);(0 2 3 7)(1 4 6 5)";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraspecialKind {
    /// Heisenberg group, exponent `p`.
    ExpP,
    /// Exponent `p^2`.
    ExpP2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    Extraspecial { p: u64, kind: ExtraspecialKind },
    Wreath { p: u64 },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Perm { degree: usize, gens: Vec<Permutation> },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Abelian(ns) => {
                let parts: Vec<String> = ns.iter().map(usize::to_string).collect();
                write!(f, "abelian:{}", parts.join("x"))
            }
            GroupSpec::Extraspecial { p, kind } => {
                let e = match kind {
                    ExtraspecialKind::ExpP => "p",
                    ExtraspecialKind::ExpP2 => "p2",
                };
                write!(f, "extraspecial:p={p},exp={e}")
            }
            GroupSpec::Wreath { p } => write!(f, "wreath:p={p}"),
            GroupSpec::Product(a, b) => write!(f, "{a}*{b}"),
            GroupSpec::Perm { degree, gens } => {
                let g: Vec<String> = gens.iter().map(Permutation::to_string).collect();
                write!(f, "perm:degree={degree};gens={}", g.join(";"))
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub cap: usize,
    /// Allows the order-15625 wreath product.
    pub stretch: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            cap: DEFAULT_CAP,
            stretch: false,
        }
    }
}

/// Two groups and their direct product on disjoint point sets.
#[derive(Debug)]
pub struct DirectProduct {
    pub left: Built,
    pub right: Built,
    /// Product element -> factor element.
    pub projections: [Vec<u32>; 2],
    /// Factor element -> product element.
    pub embeddings: [Vec<u32>; 2],
}

/// A constructed group together with the structure its construction exposes.
#[derive(Debug, Clone)]
pub struct Built {
    pub group: Arc<FiniteGroup>,
    pub spec: GroupSpec,
    /// Base subgroup of a wreath product.
    pub base: Option<Subgroup>,
    pub product: Option<Arc<DirectProduct>>,
}

impl Built {
    fn plain(group: Arc<FiniteGroup>, spec: GroupSpec) -> Self {
        Built {
            group,
            spec,
            base: None,
            product: None,
        }
    }
}

pub fn cyclic(n: usize) -> Result<Arc<FiniteGroup>> {
    cyclic_with_cap(n, DEFAULT_CAP)
}

fn cyclic_with_cap(n: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return Err(Error::HypothesisViolation("cyclic order must be positive".into()));
    }
    if n == 1 {
        return generate_group_with_cap(1, vec![], cap);
    }
    let gen = Permutation::from_cycles(n, &[(0..n).collect()])?;
    generate_group_with_cap(n, vec![gen], cap)
}

pub fn abelian(orders: &[usize]) -> Result<Arc<FiniteGroup>> {
    Ok(build(&GroupSpec::Abelian(orders.to_vec()), &BuildOptions::default())?.group)
}

fn abelian_with_cap(orders: &[usize], cap: usize) -> Result<Arc<FiniteGroup>> {
    if orders.is_empty() || orders.contains(&0) {
        return Err(Error::HypothesisViolation("abelian factors must be positive".into()));
    }
    let degree: usize = orders.iter().sum();
    let mut gens = Vec::new();
    let mut start = 0;
    for &n in orders {
        if n > 1 {
            gens.push(Permutation::from_cycles(degree, &[(start..start + n).collect()])?);
        }
        start += n;
    }
    generate_group_with_cap(degree, gens, cap)
}

pub fn extraspecial(p: u64, kind: ExtraspecialKind) -> Result<Arc<FiniteGroup>> {
    extraspecial_with_cap(p, kind, DEFAULT_CAP)
}

fn extraspecial_with_cap(p: u64, kind: ExtraspecialKind, cap: usize) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) || p == 2 || p > 5 {
        return Err(Error::UnsupportedPrime {
            prime: p,
            reason: "extraspecial groups are built for p = 3 and p = 5".into(),
        });
    }
    let p = p as usize;
    let n = p * p;
    let gens = match kind {
        // affine maps (a, b) -> (a + s, b + t a + u) on Z_p^2, point a p + b
        ExtraspecialKind::ExpP => vec![
            Permutation::new((0..n).map(|k| ((k / p + 1) % p) * p + k % p).collect())?,
            Permutation::new((0..n).map(|k| (k / p) * p + (k % p + k / p) % p).collect())?,
        ],
        // k -> k + 1 and k -> (1 + p) k on Z_{p^2}
        ExtraspecialKind::ExpP2 => vec![
            Permutation::new((0..n).map(|k| (k + 1) % n).collect())?,
            Permutation::new((0..n).map(|k| (k * (1 + p)) % n).collect())?,
        ],
    };
    generate_group_with_cap(n, gens, cap)
}

/// `C_p wr C_p` on points `i p + j` (block `i`), with its base subgroup of order `p^p`.
pub fn wreath_cyclic(p: u64, opts: &BuildOptions) -> Result<(Arc<FiniteGroup>, Subgroup)> {
    let allowed = matches!(p, 2 | 3) || (p == 5 && opts.stretch);
    if !allowed {
        let reason = if p == 5 {
            "the order-15625 wreath product requires the stretch flag"
        } else {
            "wreath products are built for p = 2, 3 and (stretch) 5"
        };
        return Err(Error::UnsupportedPrime {
            prime: p,
            reason: reason.into(),
        });
    }
    let p = p as usize;
    let n = p * p;
    let base_gen = Permutation::new(
        (0..n)
            .map(|k| if k < p { (k + 1) % p } else { k })
            .collect(),
    )?;
    let top = Permutation::new((0..n).map(|k| (k + p) % n).collect())?;
    let g = generate_group_with_cap(n, vec![base_gen, top], opts.cap)?;
    let b = g.generator_indices()[0] as usize;
    let base = g.normal_closure(&[b]);
    Ok((g, base))
}

pub fn direct_product(left: &Built, right: &Built, cap: usize) -> Result<Built> {
    let (g1, g2) = (&left.group, &right.group);
    if g1.order().saturating_mul(g2.order()) > cap {
        return Err(Error::ClosureTooLarge { cap });
    }
    let (d1, d2) = (g1.degree(), g2.degree());
    let degree = d1 + d2;
    let widen = |images: &[u16], shift: usize, first: bool| -> Permutation {
        let v: Vec<usize> = if first {
            images.iter().map(|&x| x as usize).chain(d1..degree).collect()
        } else {
            (0..d1).chain(images.iter().map(|&x| x as usize + shift)).collect()
        };
        Permutation::new(v).expect("widened permutation")
    };
    let mut gens: Vec<Permutation> = g1.generators().iter().map(|g| widen(g.images(), 0, true)).collect();
    gens.extend(g2.generators().iter().map(|g| widen(g.images(), d1, false)));
    let group = generate_group_with_cap(degree, gens, cap)?;

    let mut proj1 = Vec::with_capacity(group.order());
    let mut proj2 = Vec::with_capacity(group.order());
    let mut buf = vec![0u16; d2];
    for x in group.all() {
        let im = group.images(x);
        proj1.push(g1.index_of_images(&im[..d1]).expect("left projection") as u32);
        for (b, &v) in buf.iter_mut().zip(&im[d1..]) {
            *b = v - d1 as u16;
        }
        proj2.push(g2.index_of_images(&buf).expect("right projection") as u32);
    }
    let embed = |g: &FiniteGroup, first: bool, shift: usize| -> Vec<u32> {
        g.all()
            .map(|x| {
                let p = widen(g.images(x), shift, first);
                group.index_of(&p).expect("embedded element") as u32
            })
            .collect()
    };
    let embeddings = [embed(g1, true, 0), embed(g2, false, d1)];
    let spec = GroupSpec::Product(Box::new(left.spec.clone()), Box::new(right.spec.clone()));
    Ok(Built {
        group: group.clone(),
        spec,
        base: None,
        product: Some(Arc::new(DirectProduct {
            left: left.clone(),
            right: right.clone(),
            projections: [proj1, proj2],
            embeddings,
        })),
    })
}

pub fn build(spec: &GroupSpec, opts: &BuildOptions) -> Result<Built> {
    let cap = opts.cap;
    let s = spec.clone();
    Ok(match spec {
        GroupSpec::Cyclic(n) => Built::plain(cyclic_with_cap(*n, cap)?, s),
        GroupSpec::Abelian(ns) => Built::plain(abelian_with_cap(ns, cap)?, s),
        GroupSpec::Extraspecial { p, kind } => Built::plain(extraspecial_with_cap(*p, *kind, cap)?, s),
        GroupSpec::Wreath { p } => {
            let (group, base) = wreath_cyclic(*p, opts)?;
            Built {
                group,
                spec: s,
                base: Some(base),
                product: None,
            }
        }
        GroupSpec::Product(a, b) => direct_product(&build(a, opts)?, &build(b, opts)?, cap)?,
        GroupSpec::Perm { degree, gens } => {
            Built::plain(generate_group_with_cap(*degree, gens.clone(), cap)?, s)
        }
    })
}

/// Parses and builds in one step.
pub fn build_from_text(text: &str, opts: &BuildOptions) -> Result<Built> {
    build(&parse_group_spec(text)?, opts)
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let trimmed_start = text.len() - text.trim_start().len();
    parse_at(text.trim(), trimmed_start)
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn parse_at(text: &str, offset: usize) -> Result<GroupSpec> {
    // '*' binds loosest and associates to the left
    if let Some(star) = text.rfind('*') {
        let left = parse_at(text[..star].trim_end(), offset)?;
        let rest = &text[star + 1..];
        let skip = rest.len() - rest.trim_start().len();
        let right = parse_at(rest.trim(), offset + star + 1 + skip)?;
        return Ok(GroupSpec::Product(Box::new(left), Box::new(right)));
    }
    let colon = text
        .find(':')
        .ok_or_else(|| parse_err(offset, "expected <family>:<parameters>"))?;
    let (family, body) = (&text[..colon], &text[colon + 1..]);
    let body_at = offset + colon + 1;
    let number = |s: &str, at: usize| -> Result<usize> {
        s.trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| parse_err(at, format!("expected a positive integer, found {s:?}")))
    };
    match family {
        "cyclic" => Ok(GroupSpec::Cyclic(number(body, body_at)?)),
        "abelian" => {
            let mut at = body_at;
            let mut ns = Vec::new();
            for part in body.split('x') {
                ns.push(number(part, at)?);
                at += part.len() + 1;
            }
            Ok(GroupSpec::Abelian(ns))
        }
        "extraspecial" => {
            let kv = key_values(body, body_at, ',')?;
            let p = prime_param(&kv, body_at)?;
            let kind = match lookup(&kv, "exp") {
                Some(("p", _)) => ExtraspecialKind::ExpP,
                Some(("p2", _)) => ExtraspecialKind::ExpP2,
                Some((v, at)) => return Err(parse_err(at, format!("exp must be p or p2, found {v:?}"))),
                None => return Err(parse_err(body_at, "missing exp=<p|p2>")),
            };
            Ok(GroupSpec::Extraspecial { p, kind })
        }
        "wreath" => {
            let kv = key_values(body, body_at, ',')?;
            Ok(GroupSpec::Wreath {
                p: prime_param(&kv, body_at)?,
            })
        }
        "perm" => {
            let mut parts = body.splitn(2, ';');
            let head = parts.next().unwrap_or("");
            let kv = key_values(head, body_at, ',')?;
            let (deg_text, deg_at) =
                lookup(&kv, "degree").ok_or_else(|| parse_err(body_at, "missing degree=<n>"))?;
            let degree = number(deg_text, deg_at)?;
            if degree > u16::MAX as usize {
                return Err(parse_err(deg_at, "degree too large"));
            }
            let mut gens = Vec::new();
            if let Some(rest) = parts.next() {
                let rest_at = body_at + head.len() + 1;
                let list = rest
                    .strip_prefix("gens=")
                    .ok_or_else(|| parse_err(rest_at, "expected gens="))?;
                let mut at = rest_at + 5;
                for chunk in list.split(';') {
                    if !chunk.trim().is_empty() {
                        gens.push(parse_cycle_list(degree, chunk, at)?);
                    }
                    at += chunk.len() + 1;
                }
            }
            Ok(GroupSpec::Perm { degree, gens })
        }
        other => Err(parse_err(offset, format!("unknown group family {other:?}"))),
    }
}

fn key_values(body: &str, at: usize, sep: char) -> Result<Vec<(String, String, usize)>> {
    let mut out = Vec::new();
    let mut pos = at;
    for item in body.split(sep) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| parse_err(pos, format!("expected key=value, found {item:?}")))?;
        out.push((k.trim().to_string(), v.trim().to_string(), pos + k.len() + 1));
        pos += item.len() + 1;
    }
    Ok(out)
}

fn lookup<'a>(kv: &'a [(String, String, usize)], key: &str) -> Option<(&'a str, usize)> {
    kv.iter()
        .find(|(k, _, _)| k == key)
        .map(|(_, v, at)| (v.as_str(), *at))
}

fn prime_param(kv: &[(String, String, usize)], at: usize) -> Result<u64> {
    let (v, vat) = lookup(kv, "p").ok_or_else(|| parse_err(at, "missing p=<prime>"))?;
    match v.parse::<u64>() {
        Ok(p) if is_prime(p) => Ok(p),
        _ => Err(parse_err(vat, format!("p must be a prime, found {v:?}"))),
    }
}

/// Subgroup generated by the images of the right-hand factor's generators.
pub fn factor_subgroup(prod: &Built, which: usize) -> Option<Subgroup> {
    let dp = prod.product.as_ref()?;
    let factor = if which == 0 { &dp.left } else { &dp.right };
    let gens: Vec<usize> = factor
        .group
        .generator_indices()
        .iter()
        .map(|&g| dp.embeddings[which][g as usize] as usize)
        .collect();
    Some(subgroup_generated(&prod.group, &gens))
}
