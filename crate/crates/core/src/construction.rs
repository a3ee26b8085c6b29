//! The order-128 group `F₂⁴ ⋊ Q₈` and the data attached to it: the subgroup
//! `H₀ = [H, z]` and a character `λ` of `H` whose induction to `G` is
//! irreducible.
//!
//! Q₈ is realised inside GL₄(2) by a direct search for matrices satisfying
//! the quaternion presentation.

use thiserror::Error;

use crate::gf2::{enumerate_functionals, general_linear_group, Functional, Gf2Matrix, Gf2Vector};
use crate::group::{q8_group, FiniteGroup, GroupError, Q8Element, SemidirectProduct, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("no pair of matrices in GL4(2) satisfies the Q8 presentation")]
    SearchFailed,
    #[error("generators violate the Q8 presentation: {0}")]
    Presentation(&'static str),
    #[error("Q8 action is not faithful: {0} acts trivially")]
    NotFaithful(Q8Element),
    #[error("C_G(H) has order {0}, expected C_G(H) = H")]
    CentralizerNotH(usize),
    #[error("[H, z] has order {0}, expected 2")]
    H0Order(usize),
    #[error("functional {0} is not a valid choice of lambda")]
    InvalidLambda(Gf2Vector),
    #[error("no functional is a valid choice of lambda")]
    NoValidLambda,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A permutation of 8 points, `perm[x]` is the image of `x`.
pub type Permutation8 = [u8; 8];

/// Left regular action of Q₈ on its own elements.
pub fn q8_regular_embedding() -> [Permutation8; 8] {
    let mut out = [[0u8; 8]; 8];
    for q in Q8Element::all() {
        for x in Q8Element::all() {
            out[q.index()][x.index()] = (q * x).index() as u8;
        }
    }
    out
}

/// Cycle lengths, longest first, fixed points included.
pub fn cycle_type(perm: &Permutation8) -> Vec<usize> {
    let mut seen = [false; 8];
    let mut lengths = Vec::new();
    for start in 0..8 {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

pub fn is_even(perm: &Permutation8) -> bool {
    cycle_type(perm).iter().map(|l| l - 1).sum::<usize>() % 2 == 0
}

/// A faithful homomorphism `Q₈ → GL₄(2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q8Embedding {
    rho: [Gf2Matrix; 8],
}

impl Q8Embedding {
    /// Extends `i ↦ a`, `j ↦ b` to all of Q₈ after checking
    /// `a⁴ = 1`, `a² ≠ 1`, `b² = a²`, `b⁻¹ab = a⁻¹`.
    pub fn from_generators(a: Gf2Matrix, b: Gf2Matrix) -> Result<Self, ConstructionError> {
        if !satisfies_presentation(&a, &b) {
            return Err(ConstructionError::Presentation(
                "expected a^4 = 1, a^2 != 1, b^2 = a^2, b^-1 a b = a^-1",
            ));
        }
        let minus = a.mul(&a);
        let ab = a.mul(&b);
        let mut rho = [Gf2Matrix::IDENTITY; 8];
        rho[Q8Element::ONE.index()] = Gf2Matrix::IDENTITY;
        rho[Q8Element::MINUS_ONE.index()] = minus;
        rho[Q8Element::I.index()] = a;
        rho[Q8Element::MINUS_I.index()] = a.mul(&minus);
        rho[Q8Element::J.index()] = b;
        rho[Q8Element::MINUS_J.index()] = b.mul(&minus);
        rho[Q8Element::K.index()] = ab;
        rho[Q8Element::MINUS_K.index()] = ab.mul(&minus);
        let embedding = Q8Embedding { rho };
        for p in Q8Element::all() {
            for q in Q8Element::all() {
                if embedding.rho(p).mul(&embedding.rho(q)) != embedding.rho(p * q) {
                    return Err(ConstructionError::Presentation("extension is not a homomorphism"));
                }
            }
        }
        if let Some(q) = Q8Element::all()
            .skip(1)
            .find(|&q| embedding.rho(q) == Gf2Matrix::IDENTITY)
        {
            return Err(ConstructionError::NotFaithful(q));
        }
        Ok(embedding)
    }

    pub fn rho(&self, q: Q8Element) -> Gf2Matrix {
        self.rho[q.index()]
    }

    pub fn matrices(&self) -> [Gf2Matrix; 8] {
        self.rho
    }

    /// Images of `i` and `j`.
    pub fn generators(&self) -> (Gf2Matrix, Gf2Matrix) {
        (self.rho(Q8Element::I), self.rho(Q8Element::J))
    }
}

fn satisfies_presentation(a: &Gf2Matrix, b: &Gf2Matrix) -> bool {
    let a2 = a.mul(a);
    if a2 == Gf2Matrix::IDENTITY || a2.mul(&a2) != Gf2Matrix::IDENTITY {
        return false;
    }
    if b.mul(b) != a2 {
        return false;
    }
    // b⁻¹ab = a⁻¹  ⇔  ab = ba⁻¹, and a⁻¹ = a³
    a.mul(b) == b.mul(&a2.mul(a))
}

/// The lexicographically least `(A, B)` in GL₄(2), ordered by row
/// concatenation with `A` compared first, satisfying the Q₈ presentation.
pub fn find_q8_in_gl42() -> Q8Embedding {
    let gl = general_linear_group();
    for a in &gl {
        let a2 = a.mul(a);
        if a2 == Gf2Matrix::IDENTITY || a2.mul(&a2) != Gf2Matrix::IDENTITY {
            continue;
        }
        if let Some(b) = gl.iter().find(|b| satisfies_presentation(a, b)) {
            return Q8Embedding::from_generators(*a, *b).expect("search result satisfies the presentation");
        }
    }
    unreachable!("Q8 embeds in GL4(2)");
}

/// Every generator pair `(A, B)` in GL₄(2) satisfying the presentation, in
/// search order.
pub fn all_q8_generator_pairs() -> Vec<(Gf2Matrix, Gf2Matrix)> {
    let gl = general_linear_group();
    let squares: Vec<Gf2Matrix> = gl.iter().map(|m| m.mul(m)).collect();
    let mut out = Vec::new();
    for (ai, a) in gl.iter().enumerate() {
        let a2 = squares[ai];
        if a2 == Gf2Matrix::IDENTITY || a2.mul(&a2) != Gf2Matrix::IDENTITY {
            continue;
        }
        for (bi, b) in gl.iter().enumerate() {
            if squares[bi] == a2 && satisfies_presentation(a, b) {
                out.push((*a, *b));
            }
        }
    }
    out
}

/// `G = H ⋊ Q` with `H = F₂⁴` and `Q ≅ Q₈` acting through `ρ`.
#[derive(Debug, Clone)]
pub struct Counterexample {
    product: SemidirectProduct,
    rho: Q8Embedding,
    h: Subgroup,
    q: Subgroup,
}

/// Builds `G` and checks `C_G(H) = H`.
pub fn build_g(rho: &Q8Embedding) -> Result<Counterexample, ConstructionError> {
    let product = SemidirectProduct::new(q8_group(), rho.matrices().to_vec())?;
    if let Some(&q) = product.kernel_of_action().first() {
        return Err(ConstructionError::NotFaithful(Q8Element::new(q).unwrap()));
    }
    let h = product.vector_subgroup();
    let q = product.complement();
    let centralizer = product.group().centralizer_of(&h);
    if centralizer != h {
        return Err(ConstructionError::CentralizerNotH(centralizer.len()));
    }
    Ok(Counterexample {
        product,
        rho: rho.clone(),
        h,
        q,
    })
}

impl Counterexample {
    /// The group built from the canonical search result.
    pub fn canonical() -> Self {
        build_g(&find_q8_in_gl42()).expect("canonical embedding is faithful")
    }

    pub fn group(&self) -> &FiniteGroup {
        self.product.group()
    }

    pub fn product(&self) -> &SemidirectProduct {
        &self.product
    }

    pub fn embedding(&self) -> &Q8Embedding {
        &self.rho
    }

    /// The normal subgroup `H ≅ F₂⁴`.
    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    /// The complement `Q ≅ Q₈`.
    pub fn q(&self) -> &Subgroup {
        &self.q
    }

    /// Index of `(0, q)`.
    pub fn lift(&self, q: Q8Element) -> usize {
        self.product.lift(q.index())
    }

    /// The lift of `-1`, the central involution of `Q`.
    pub fn z(&self) -> usize {
        self.lift(Q8Element::MINUS_ONE)
    }

    pub fn embed_vector(&self, v: Gf2Vector) -> usize {
        self.product.embed_vector(v)
    }

    /// The vector part of an element of `H`.
    pub fn vector_of(&self, g: usize) -> Option<Gf2Vector> {
        self.h.contains(g).then(|| self.product.element(g).h)
    }

    /// The coset `gH` as an element of Q₈.
    pub fn coset_of(&self, g: usize) -> Q8Element {
        Q8Element::new(self.product.element(g).q).unwrap()
    }

    /// `C_H(g)`.
    pub fn centralizer_in_h(&self, g: usize) -> Subgroup {
        self.group().centralizer(g).intersection(&self.h)
    }

    /// `H₀ = [H, z]`; must have order 2.
    pub fn compute_h0(&self) -> Result<Subgroup, ConstructionError> {
        let h0 = self.group().commutator_span(&self.h, self.z());
        if h0.len() != 2 {
            return Err(ConstructionError::H0Order(h0.len()));
        }
        Ok(h0)
    }

    /// The nonidentity element of `H₀`.
    pub fn h0_element(&self) -> Result<usize, ConstructionError> {
        Ok(self.compute_h0()?.members()[1])
    }

    /// `[H, x]` for the lift of each `x ∈ Q₈`.
    pub fn commutator_spans(&self) -> Vec<(Q8Element, Subgroup)> {
        Q8Element::all()
            .map(|x| (x, self.group().commutator_span(&self.h, self.lift(x))))
            .collect()
    }

    /// `∩_{1 ≠ x ∈ Q} [H, x]`.
    pub fn intersect_commutators(&self) -> Subgroup {
        self.intersect_over(Q8Element::all().skip(1))
    }

    pub fn intersect_over(&self, xs: impl IntoIterator<Item = Q8Element>) -> Subgroup {
        xs.into_iter()
            .map(|x| self.group().commutator_span(&self.h, self.lift(x)))
            .fold(self.h.clone(), |acc, s| acc.intersection(&s))
    }

    /// The character `λ_v` of `H` for an arbitrary covector, valid or not.
    pub fn lambda(&self, functional: Functional) -> LambdaChoice {
        let kernel = self
            .group()
            .subgroup(functional.kernel().into_iter().map(|v| self.embed_vector(v)))
            .expect("kernel of a functional is a subgroup");
        LambdaChoice {
            functional,
            kernel,
            h: self.h.clone(),
            stride: self.product.acting_group().order(),
        }
    }

    /// Whether `ker λ` omits `[H, x]` for every nontrivial coset.
    pub fn satisfies_coset_condition(&self, lambda: &LambdaChoice) -> bool {
        self.commutator_spans()
            .iter()
            .skip(1)
            .all(|(_, span)| !span.is_subset_of(&lambda.kernel))
    }

    pub fn is_valid_lambda(&self, functional: Functional) -> Result<bool, ConstructionError> {
        let h0 = self.h0_element()?;
        Ok(self.lambda(functional).value(h0) == Some(-1))
    }

    /// Least covector `v` with `v · h₀ = 1`, checked against the coset
    /// condition.
    pub fn choose_lambda(&self) -> Result<LambdaChoice, ConstructionError> {
        self.valid_lambdas()?
            .into_iter()
            .next()
            .ok_or(ConstructionError::NoValidLambda)
    }

    /// All valid choices of `λ`, in covector order.
    pub fn valid_lambdas(&self) -> Result<Vec<LambdaChoice>, ConstructionError> {
        let mut out = Vec::new();
        for f in enumerate_functionals() {
            if self.is_valid_lambda(f)? {
                let lambda = self.lambda(f);
                if !self.satisfies_coset_condition(&lambda) {
                    return Err(ConstructionError::InvalidLambda(f.covector()));
                }
                out.push(lambda);
            }
        }
        Ok(out)
    }
}

/// A linear character `λ_v(h) = (-1)^{v·h}` of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaChoice {
    functional: Functional,
    kernel: Subgroup,
    h: Subgroup,
    stride: usize,
}

impl LambdaChoice {
    pub fn functional(&self) -> Functional {
        self.functional
    }

    pub fn covector(&self) -> Gf2Vector {
        self.functional.covector()
    }

    /// `ker λ` as a subgroup of `G`.
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// The subgroup `H` that `λ` lives on.
    pub fn domain(&self) -> &Subgroup {
        &self.h
    }

    /// `λ(g)` for `g ∈ H`, `None` off `H`.
    pub fn value(&self, g: usize) -> Option<i8> {
        self.h.contains(g).then(|| {
            let v = Gf2Vector::new((g / self.stride) as u8).expect("element of H");
            self.functional.sign(v)
        })
    }
}
