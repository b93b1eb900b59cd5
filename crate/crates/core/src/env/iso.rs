use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::liealg::{family_build, FamilyMember, LieAlgebra};
use crate::linalg::solve_columns;

use super::{EnvError, Monomial, PbwElement};

/// Candidate homomorphism from `source` into `U(target)`, given on a basis.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    source: Arc<LieAlgebra>,
    target: Arc<LieAlgebra>,
    cap: usize,
    images: Vec<PbwElement>,
}

impl IsoWitness {
    pub fn new(
        source: Arc<LieAlgebra>,
        target: Arc<LieAlgebra>,
        cap: usize,
        images: Vec<PbwElement>,
    ) -> IsoWitness {
        assert_eq!(images.len(), source.dim());
        IsoWitness {
            source,
            target,
            cap,
            images,
        }
    }

    pub fn source(&self) -> &Arc<LieAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LieAlgebra> {
        &self.target
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn images(&self) -> &[PbwElement] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &PbwElement {
        &self.images[i]
    }

    /// Copy with one basis image replaced.
    pub fn with_image(&self, i: usize, image: PbwElement) -> IsoWitness {
        let mut w = self.clone();
        w.images[i] = image;
        w
    }

    /// Image of a Lie element given by coordinates in the source basis.
    pub fn image_of(&self, coords: &[u32]) -> PbwElement {
        let mut acc = PbwElement::zero(&self.target, self.cap);
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.images[i].scale(c));
            }
        }
        acc
    }
}

pub fn iso_build(p: u64, m: usize, k: usize) -> Result<IsoWitness, EnvError> {
    iso_build_with_cap(p, m, k, p as usize + 2)
}

/// `L' -> U(L)`: fixes `x_i` and `D`, sends `D'` to `D^p + D0`.
pub fn iso_build_with_cap(p: u64, m: usize, k: usize, cap: usize) -> Result<IsoWitness, EnvError> {
    let source = Arc::new(family_build(p, m, k, FamilyMember::Lprime)?);
    let target = Arc::new(family_build(p, m, k, FamilyMember::L)?);
    let (d0, d) = (k, k + 1);
    let mut images: Vec<PbwElement> = (0..k)
        .map(|i| PbwElement::generator(&target, cap, i))
        .collect();
    let dt = PbwElement::generator(&target, cap, d);
    images.push(dt.clone());
    images.push(dt.pow(p)?.add(&PbwElement::generator(&target, cap, d0)));
    Ok(IsoWitness::new(source, target, cap, images))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Brackets are preserved and the image generates the target.
    Pass,
    /// Brackets are preserved but some target generator was not recovered.
    NotGenerating,
    /// Some bracket is not preserved.
    BracketFailure,
}

impl fmt::Display for IsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoVerdict::Pass => "pass",
            IsoVerdict::NotGenerating => "homomorphism, not generating",
            IsoVerdict::BracketFailure => "bracket failure",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub verdict: IsoVerdict,
    pub pairs_checked: usize,
    pub bracket_failures: Vec<(String, String)>,
    /// Target basis elements outside the span of images and p-th powers.
    pub missing: Vec<String>,
    pub log: Vec<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.verdict == IsoVerdict::Pass
    }
}

pub fn iso_verify(w: &IsoWitness) -> Result<IsoReport, EnvError> {
    let src = &w.source;
    let n = src.dim();
    let mut log = Vec::new();
    let mut failures = Vec::new();
    let mut pairs = 0;
    for a in 0..n {
        for b in a + 1..n {
            pairs += 1;
            let lhs = w.images[a].commutator(&w.images[b])?;
            let rhs = w.image_of(src.basis_bracket(a, b));
            let ok = lhs == rhs;
            log.push(format!(
                "[{}, {}] = {} {}",
                w.images[a],
                w.images[b],
                lhs,
                if ok { "ok" } else { "MISMATCH" }
            ));
            if !ok {
                failures.push((src.name(a).to_string(), src.name(b).to_string()));
            }
        }
    }

    // generators: images, plus p-th powers of degree-one images
    let p = src.field().characteristic() as u64;
    let mut spanning: Vec<(String, PbwElement)> = (0..n)
        .map(|i| (format!("phi({})", src.name(i)), w.images[i].clone()))
        .collect();
    for i in 0..n {
        if w.images[i].degree() == Some(1) && (p as usize) <= w.cap {
            spanning.push((format!("phi({})^{p}", src.name(i)), w.images[i].pow(p)?));
        }
    }
    let mut monomials: BTreeMap<Monomial, usize> = BTreeMap::new();
    for (_, e) in &spanning {
        for m in e.terms().keys() {
            let next = monomials.len();
            monomials.entry(m.clone()).or_insert(next);
        }
    }
    let tgt = &w.target;
    let mut missing = Vec::new();
    for t in 0..tgt.dim() {
        let gen = Monomial::generator(tgt.dim(), t);
        let Some(&row) = monomials.get(&gen) else {
            missing.push(tgt.name(t).to_string());
            log.push(format!("{} not reached", tgt.name(t)));
            continue;
        };
        let columns: Vec<Vec<u32>> = spanning
            .iter()
            .map(|(_, e)| {
                let mut v = vec![0; monomials.len()];
                for (m, &c) in e.terms() {
                    v[monomials[m]] = c;
                }
                v
            })
            .collect();
        let mut target = vec![0; monomials.len()];
        target[row] = 1;
        match solve_columns(tgt.field(), &columns, &target) {
            Some(c) => {
                let expr: Vec<String> = c
                    .iter()
                    .zip(&spanning)
                    .filter(|(&x, _)| x != 0)
                    .map(|(&x, (label, _))| {
                        if x == 1 {
                            label.clone()
                        } else {
                            format!("({})*{}", tgt.field().format(x), label)
                        }
                    })
                    .collect();
                log.push(format!("{} = {}", tgt.name(t), expr.join(" + ")));
            }
            None => {
                missing.push(tgt.name(t).to_string());
                log.push(format!(
                    "{} not in generated span at cap {}",
                    tgt.name(t),
                    w.cap
                ));
            }
        }
    }
    let verdict = if !failures.is_empty() {
        IsoVerdict::BracketFailure
    } else if !missing.is_empty() {
        IsoVerdict::NotGenerating
    } else {
        IsoVerdict::Pass
    };
    Ok(IsoReport {
        verdict,
        pairs_checked: pairs,
        bracket_failures: failures,
        missing,
        log,
    })
}
