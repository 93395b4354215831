//! Border, cactus, complex and admissible rank of a real binary form.
//!
//! Border rank is the lowest degree with a nonzero apolar form. When that
//! degree is at most `⌊(d+1)/2⌋` the apolar form is unique up to scale and
//! the complex rank is `b` or `d + 2 - b` depending on whether it is
//! square-free. A real square-free apolar form of the complex-rank degree
//! exists in every case, so the admissible rank (standard structure)
//! equals the complex rank; we return one such form as a certificate.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{apolar_system, catalecticant, ApolarSystem, BinaryForm};
use crate::labels::Label;
use crate::pencil::{candidate_weights, LambdaPoint, Pencil};
use crate::realroots::{
    count_real_roots, is_squarefree, squarefree_decomposition, RealStructure,
};

/// `⌊(d+2)/2⌋`, the complex rank of a general form of degree `d`.
pub fn generic_rank(d: usize) -> usize {
    (d + 2) / 2
}

fn check_degree(f: &BinaryForm) -> Result<()> {
    if f.degree() == 0 {
        Err(Error::ConstantForm)
    } else {
        Ok(())
    }
}

pub fn border_rank(f: &BinaryForm) -> Result<usize> {
    check_degree(f)?;
    let d = f.degree();
    for k in 1..=d {
        if catalecticant(f, k)?.rank() < k + 1 {
            return Ok(k);
        }
    }
    // unreachable for d >= 1: Ann_k is nonzero once k >= ⌊(d+2)/2⌋
    Ok(d + 1)
}

/// The unique apolar form of degree `b` when `b <= ⌊(d+1)/2⌋`.
fn minimal_apolar_form(f: &BinaryForm, b: usize) -> Result<Option<BinaryForm>> {
    if b > (f.degree() + 1) / 2 {
        return Ok(None);
    }
    let sys = apolar_system(f, b)?;
    debug_assert_eq!(sys.dim(), 1, "apolar form below the middle degree is unique");
    Ok(sys.basis.into_iter().next())
}

pub fn complex_rank(f: &BinaryForm) -> Result<usize> {
    let b = border_rank(f)?;
    complex_rank_from_border(f, b)
}

fn complex_rank_from_border(f: &BinaryForm, b: usize) -> Result<usize> {
    Ok(match minimal_apolar_form(f, b)? {
        Some(h) if !is_squarefree(&h) => f.degree() + 2 - b,
        _ => b,
    })
}

/// A square-free real apolar form whose roots give an admissible
/// decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub form: BinaryForm,
    /// Position in the pencil it was drawn from, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<LambdaPoint>,
}

pub fn admissible_rank(f: &BinaryForm) -> Result<(usize, Certificate)> {
    let k = complex_rank(f)?;
    let sys = apolar_system(f, k)?;
    let cert = find_squarefree_member(&sys)?;
    Ok((k, cert))
}

/// First square-free member of a real apolar system: the unique form, the
/// pencil partition samples, or (dimension >= 3) the pencil of the first two
/// basis vectors followed by integer grids of growing size.
pub(crate) fn find_squarefree_member(sys: &ApolarSystem) -> Result<Certificate> {
    let k = sys.operator_degree;
    match sys.dim() {
        0 => Err(Error::CertificateSearchExhausted { degree: k }),
        1 => {
            let h = &sys.basis[0];
            if is_squarefree(h) {
                Ok(Certificate {
                    form: h.clone(),
                    lambda: None,
                })
            } else {
                Err(Error::CertificateSearchExhausted { degree: k })
            }
        }
        dim => {
            if k >= 2 {
                let pencil = Pencil::new(sys.basis[0].clone(), sys.basis[1].clone())?;
                for lambda in pencil.sample_points() {
                    let member = pencil.member(&lambda);
                    if is_squarefree(&member) {
                        return Ok(Certificate {
                            form: member,
                            lambda: Some(lambda),
                        });
                    }
                }
            }
            if dim == 2 && k >= 2 {
                return Err(Error::CertificateSearchExhausted { degree: k });
            }
            for (round, random) in [(0u64, 64usize), (1, 512)] {
                for w in candidate_weights(dim, round, random) {
                    if let Some(h) = sys.combine(&w) {
                        if is_squarefree(&h) {
                            return Ok(Certificate {
                                form: h,
                                lambda: None,
                            });
                        }
                    }
                }
            }
            Err(Error::CertificateSearchExhausted { degree: k })
        }
    }
}

/// `(a, b; d_1, ..., d_s)` of a conjugation-stable zero-dimensional scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeLabel {
    /// Half the total degree of the components that are swapped in pairs.
    pub a: usize,
    /// Total degree of the self-conjugate components.
    pub b: usize,
    /// Component degrees, largest first.
    pub parts: Vec<usize>,
    /// Label of the reduced support (one count per point).
    pub support: Label,
}

impl SchemeLabel {
    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl std::fmt::Display for SchemeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({},{}; {})", self.a, self.b, parts.join(","))
    }
}

/// Scheme-label of the scheme cut out by an apolar form.
pub fn scheme_label_of(h: &BinaryForm) -> SchemeLabel {
    let mut parts = Vec::new();
    let (mut a, mut b) = (0, 0);
    let (mut pairs, mut reals) = (0, 0);
    for (factor, m) in squarefree_decomposition(h) {
        let c = count_real_roots(&factor, RealStructure::Standard)
            .expect("factors have positive degree");
        parts.extend(std::iter::repeat(m).take(c.total_distinct));
        b += m * c.real_distinct;
        a += m * c.conj_pairs;
        reals += c.real_distinct;
        pairs += c.conj_pairs;
    }
    parts.sort_unstable_by(|x, y| y.cmp(x));
    SchemeLabel {
        a,
        b,
        parts,
        support: Label::new(pairs, reals),
    }
}

/// Scheme-label of the unique border-rank scheme, present when
/// `b <= ⌊(d+1)/2⌋`.
pub fn scheme_label_of_border_scheme(f: &BinaryForm) -> Result<Option<SchemeLabel>> {
    let b = border_rank(f)?;
    Ok(minimal_apolar_form(f, b)?.map(|h| scheme_label_of(&h)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub degree: usize,
    pub border_rank: usize,
    pub cactus_rank: usize,
    pub complex_rank: usize,
    pub admissible_rank: usize,
    pub generic_rank: usize,
    pub rho: usize,
    pub certificate: Certificate,
    pub scheme_label: Option<SchemeLabel>,
}

pub fn rank_profile(f: &BinaryForm) -> Result<RankProfile> {
    let b = border_rank(f)?;
    let d = f.degree();
    let complex = complex_rank_from_border(f, b)?;
    let cert = find_squarefree_member(&apolar_system(f, complex)?)?;
    Ok(RankProfile {
        degree: d,
        border_rank: b,
        // on the rational normal curve the smallest scheme has the border degree
        cactus_rank: b,
        complex_rank: complex,
        admissible_rank: complex,
        generic_rank: generic_rank(d),
        rho: d + 1,
        certificate: cert,
        scheme_label: minimal_apolar_form(f, b)?.map(|h| scheme_label_of(&h)),
    })
}
