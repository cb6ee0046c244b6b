//! Germ presentations and their Jacobian modules.
//!
//! A germ is presented by polynomial components `f₁,…,f_p` over a ring whose
//! variables split into a parameter block `y` (the smooth axis `Y`) followed
//! by a fiber block `z`; every component must vanish on `Y` (no pure-`y`
//! terms). The module builders return [`SubmoduleSpec`] values whose ambient
//! relations are the components themselves, so colengths and memberships are
//! computed over the local ring of the germ.
//!
//! Also here: hyperplanes with deterministic kernel bases (restricted
//! Jacobian modules), fiber specialization, the Grassmann incidence
//! modification with exact chain-rule verification, and the two-structure
//! witness matrices that make nilpotent blindness replayable.

use crate::groebner::{IdealSpec, SubmoduleSpec, Vect};
use crate::ideal_ops::radical_membership;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::rational::{is_zero, Q};
use crate::ring::PolyRing;
use itertools::Itertools;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GermError {
    #[error("component {index} does not vanish on Y (it has pure parameter terms)")]
    ComponentNotOnY { index: usize },
    #[error("a germ needs at least one component")]
    NoComponents,
    #[error("parameter block length {y_len} exceeds the ring arity {arity}")]
    BadBlockSplit { y_len: usize, arity: usize },
    #[error("hyperplane form is zero or not homogeneous linear")]
    BadHyperplane,
    #[error("auxiliary function F is required for this check")]
    MissingF,
    #[error("Grassmann modification needs a fiber block of size at least 2")]
    FiberTooSmall,
    #[error("hyperplane has no usable chart coefficient in the fiber block")]
    NoChart,
    #[error("chain-rule identity {identity} failed for component {component}")]
    IdentityFailure { identity: String, component: usize },
}

/// A hyperplane through the origin, stored as the full-arity coefficient
/// vector of its linear form (parameter block first). It contains `Y`
/// exactly when every parameter coefficient vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub coeffs: Vec<Q>,
    pub label: String,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Q>, label: impl Into<String>) -> Result<Self, GermError> {
        if coeffs.iter().all(is_zero) {
            return Err(GermError::BadHyperplane);
        }
        Ok(Hyperplane {
            coeffs,
            label: label.into(),
        })
    }

    /// Build from a homogeneous linear polynomial.
    pub fn from_form(form: &Poly) -> Result<Self, GermError> {
        let ring = form.ring();
        let mut coeffs = vec![Q::zero(); ring.arity()];
        for (m, c) in form.terms() {
            if m.degree() != 1 {
                return Err(GermError::BadHyperplane);
            }
            let var = m.0.iter().position(|&e| e == 1).expect("degree-1 term");
            coeffs[var] = c.clone();
        }
        let label = form.to_string();
        Hyperplane::new(coeffs, label)
    }

    pub fn form(&self, ring: &PolyRing) -> Poly {
        assert_eq!(self.coeffs.len(), ring.arity());
        Poly::linear_form(ring, &self.coeffs)
    }

    pub fn contains_y(&self, y_len: usize) -> bool {
        self.coeffs[..y_len].iter().all(is_zero)
    }

    pub fn z_coeffs(&self, y_len: usize) -> &[Q] {
        &self.coeffs[y_len..]
    }

    /// The bijection ι: read the fiber coefficients as a hyperplane of the
    /// fiber germ (arity n, no parameter block).
    pub fn iota(&self, y_len: usize) -> Hyperplane {
        Hyperplane {
            coeffs: self.coeffs[y_len..].to_vec(),
            label: format!("iota({})", self.label),
        }
    }
}

/// A germ presentation: components over a (y, z)-blocked ring, plus the
/// caller-asserted metadata every verdict echoes.
#[derive(Clone, Debug)]
pub struct GermPresentation {
    pub name: String,
    pub ring: PolyRing,
    /// Length of the parameter block; variables `0..y_len` are `y`,
    /// the rest are `z`.
    pub y_len: usize,
    /// Defining components of X; also the ambient relations of every module
    /// built from this germ.
    pub components: Vec<Poly>,
    /// Optional second structure with the same zero set (for blindness runs).
    pub second_structure: Option<Vec<Poly>>,
    /// Optional auxiliary function for A_F / W_F.
    pub aux_function: Option<Poly>,
    pub hyperplanes: Vec<Hyperplane>,
    pub equidimensional: bool,
    pub wa: bool,
    pub icis: bool,
    /// Local dimension of X at 0, if asserted by the caller.
    pub dim: Option<usize>,
}

impl GermPresentation {
    pub fn new(
        name: impl Into<String>,
        ring: PolyRing,
        y_len: usize,
        components: Vec<Poly>,
    ) -> Result<Self, GermError> {
        if components.is_empty() {
            return Err(GermError::NoComponents);
        }
        if y_len > ring.arity() {
            return Err(GermError::BadBlockSplit {
                y_len,
                arity: ring.arity(),
            });
        }
        let pres = GermPresentation {
            name: name.into(),
            ring,
            y_len,
            components,
            second_structure: None,
            aux_function: None,
            hyperplanes: Vec::new(),
            equidimensional: false,
            wa: false,
            icis: false,
            dim: None,
        };
        for (i, f) in pres.components.iter().enumerate() {
            if !pres.vanishes_on_y(f) {
                return Err(GermError::ComponentNotOnY { index: i });
            }
        }
        Ok(pres)
    }

    /// Does the polynomial restrict to zero on Y (z = 0)?
    pub fn vanishes_on_y(&self, f: &Poly) -> bool {
        let zeros: Vec<(usize, Q)> = self.z_vars().map(|i| (i, Q::zero())).collect();
        f.specialize(&zeros).is_zero()
    }

    pub fn y_vars(&self) -> std::ops::Range<usize> {
        0..self.y_len
    }

    pub fn z_vars(&self) -> std::ops::Range<usize> {
        self.y_len..self.ring.arity()
    }

    /// Fiber dimension of the ambient space (n).
    pub fn n(&self) -> usize {
        self.ring.arity() - self.y_len
    }

    pub fn p(&self) -> usize {
        self.components.len()
    }

    /// Asserted local dimension, defaulting to the complete-intersection
    /// value k + n − p.
    pub fn local_dim(&self) -> usize {
        self.dim
            .unwrap_or_else(|| (self.ring.arity()).saturating_sub(self.p()))
    }

    /// Same germ with different components (used for second-structure runs).
    pub fn restructure(&self, components: Vec<Poly>) -> Result<GermPresentation, GermError> {
        let mut out = self.clone();
        out.components = components;
        for (i, f) in out.components.iter().enumerate() {
            if !out.vanishes_on_y(f) {
                return Err(GermError::ComponentNotOnY { index: i });
            }
        }
        Ok(out)
    }

    /// Components of the augmented map (f, F) for A_F / W_F. The relations
    /// of the augmented modules stay (f): F is a function on X, not a
    /// defining equation.
    pub fn augmented_components(&self) -> Result<Vec<Poly>, GermError> {
        let aux = self.aux_function.clone().ok_or(GermError::MissingF)?;
        let mut comps = self.components.clone();
        comps.push(aux);
        Ok(comps)
    }
}

/// All Jacobian-module flavors of one (components, relations) pair.
#[derive(Clone, Debug)]
pub struct JacobianModules {
    /// Columns of all partials.
    pub jm: SubmoduleSpec,
    /// Fiber-direction partials only.
    pub jm_z: SubmoduleSpec,
    /// Parameter-direction partials only.
    pub jm_y: SubmoduleSpec,
    /// z_i · (fiber-direction partials): the condition-W module.
    pub my_jm_z: SubmoduleSpec,
}

/// The p × arity matrix of partial derivatives.
pub fn jacobian_matrix(components: &[Poly]) -> Vec<Vec<Poly>> {
    let arity = components
        .first()
        .map(|f| f.ring().arity())
        .unwrap_or_default();
    components
        .iter()
        .map(|f| (0..arity).map(|j| f.diff(j)).collect())
        .collect()
}

/// One partial-derivative column as a rank-p vector.
fn partial_column(components: &[Poly], var: usize) -> Vect {
    Vect::new(components.iter().map(|f| f.diff(var)).collect())
}

/// Build the Jacobian modules of `components` over `relations`.
pub fn jacobian_modules_for(
    ring: &PolyRing,
    components: &[Poly],
    relations: &[Poly],
    y_len: usize,
) -> JacobianModules {
    let rank = components.len();
    let col = |v: usize| partial_column(components, v);
    let mk = |gens: Vec<Vect>| {
        SubmoduleSpec::new(ring.clone(), rank, gens, relations.to_vec())
    };
    let jm = mk((0..ring.arity()).map(col).collect());
    let jm_y = mk((0..y_len).map(col).collect());
    let z_cols: Vec<Vect> = (y_len..ring.arity()).map(col).collect();
    let jm_z = mk(z_cols.clone());
    // m_Y is generated by the fiber coordinates; i-outer, j-inner.
    let mut my_gens = Vec::new();
    for zi in y_len..ring.arity() {
        let z = Poly::var(ring, zi);
        for c in &z_cols {
            my_gens.push(c.mul_poly(&z));
        }
    }
    let my_jm_z = mk(my_gens);
    JacobianModules {
        jm,
        jm_z,
        jm_y,
        my_jm_z,
    }
}

pub fn jacobian_modules(p: &GermPresentation) -> JacobianModules {
    jacobian_modules_for(&p.ring, &p.components, &p.components, p.y_len)
}

/// Jacobian modules of the augmented map (f, F) over the relations (f).
pub fn augmented_jacobian_modules(p: &GermPresentation) -> Result<JacobianModules, GermError> {
    let comps = p.augmented_components()?;
    Ok(jacobian_modules_for(
        &p.ring,
        &comps,
        &p.components,
        p.y_len,
    ))
}

/// Which variable block the hyperplane kernel is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RestrictionScope {
    /// Directions tangent to H in the whole ambient space.
    Full,
    /// Fiber directions only (used for JM_z(f)_H with H ⊇ Y).
    ZOnly,
}

/// Deterministic kernel basis of the linear form on the index block
/// `lo..hi`: with pivot p = the largest in-block index carrying a nonzero
/// coefficient, the basis is { e_i − (c_i/c_p)·e_p : i ≠ p } in ascending i.
/// A form with no in-block coefficient does not constrain the block, and the
/// full standard basis is returned.
pub fn kernel_basis_in_block(coeffs: &[Q], lo: usize, hi: usize) -> Vec<Vec<Q>> {
    let pivot = (lo..hi).rev().find(|&i| !is_zero(&coeffs[i]));
    let mut basis = Vec::new();
    match pivot {
        None => {
            for i in lo..hi {
                let mut v = vec![Q::zero(); coeffs.len()];
                v[i] = Q::one();
                basis.push(v);
            }
        }
        Some(p) => {
            for i in lo..hi {
                if i == p {
                    continue;
                }
                let mut v = vec![Q::zero(); coeffs.len()];
                v[i] = Q::one();
                v[p] = -(&coeffs[i] / &coeffs[p]);
                basis.push(v);
            }
        }
    }
    basis
}

/// Directional derivative of the component vector along `v`.
fn directional_column(components: &[Poly], v: &[Q]) -> Vect {
    let ring = components[0].ring().clone();
    Vect::new(
        components
            .iter()
            .map(|f| {
                let mut acc = Poly::zero(&ring);
                for (j, c) in v.iter().enumerate() {
                    if !is_zero(c) {
                        acc = acc.add(&f.diff(j).scale(c));
                    }
                }
                acc
            })
            .collect(),
    )
}

/// The restricted Jacobian module JM(f)_H (or JM_z(f)_H): directional
/// derivatives along the deterministic kernel basis of H in the chosen
/// block.
pub fn hyperplane_restricted(
    p: &GermPresentation,
    h: &Hyperplane,
    scope: RestrictionScope,
) -> SubmoduleSpec {
    assert_eq!(h.coeffs.len(), p.ring.arity(), "hyperplane arity mismatch");
    let (lo, hi) = match scope {
        RestrictionScope::Full => (0, p.ring.arity()),
        RestrictionScope::ZOnly => (p.y_len, p.ring.arity()),
    };
    let basis = kernel_basis_in_block(&h.coeffs, lo, hi);
    let gens = basis
        .iter()
        .map(|v| directional_column(&p.components, v))
        .collect();
    SubmoduleSpec::new(p.ring.clone(), p.p(), gens, p.components.clone())
}

/// Strip the parameter block after specialization; every term must have
/// zero parameter exponents.
fn project_to_fiber(poly: &Poly, y_len: usize, fiber: &PolyRing) -> Poly {
    Poly::from_terms(
        fiber,
        poly.terms().iter().map(|(m, c)| {
            assert!(
                m.0[..y_len].iter().all(|&e| e == 0),
                "residual parameter exponent after specialization"
            );
            (Monomial(m.0[y_len..].to_vec()), c.clone())
        }),
    )
}

/// The fiber germ at the parameter point y₀: substitute y = y₀ and read the
/// result in the fiber ring (k = 0). Flags and the dimension drop carry
/// over; the auxiliary function and second structure specialize too.
pub fn specialize_fiber(p: &GermPresentation, y0: &[Q]) -> GermPresentation {
    assert_eq!(y0.len(), p.y_len, "parameter point arity mismatch");
    let fiber_vars: Vec<String> = p
        .z_vars()
        .map(|i| p.ring.var_name(i).to_string())
        .collect();
    let fiber = PolyRing::new(fiber_vars, p.ring.order());
    let values: Vec<(usize, Q)> = p.y_vars().map(|i| (i, y0[i].clone())).collect();
    let spec = |f: &Poly| project_to_fiber(&f.specialize(&values), p.y_len, &fiber);

    let point = y0.iter().map(crate::rational::render).join(",");
    GermPresentation {
        name: format!("{}@({})", p.name, point),
        ring: fiber.clone(),
        y_len: 0,
        components: p.components.iter().map(spec).collect(),
        second_structure: p
            .second_structure
            .as_ref()
            .map(|g| g.iter().map(spec).collect()),
        aux_function: p.aux_function.as_ref().map(spec),
        hyperplanes: p
            .hyperplanes
            .iter()
            .filter(|h| h.contains_y(p.y_len))
            .map(|h| h.iota(p.y_len))
            .collect(),
        equidimensional: p.equidimensional,
        wa: p.wa,
        icis: p.icis,
        dim: p.dim.map(|d| d.saturating_sub(p.y_len)),
    }
}

/// The Grassmann modification G = f∘β in the chart where fiber variable
/// `chart` is eliminated: β(y, z', a) = (y, z', Σ aᵢ z'ᵢ). The a-block
/// joins the parameter block (the new germ is blocked (y, a | z')), and the
/// three chain-rule identity families are verified exactly.
#[derive(Clone, Debug)]
pub struct GrassmannModification {
    pub presentation: GermPresentation,
    /// Index (within the old z-block) of the eliminated variable.
    pub chart: usize,
    /// Index of the first a-variable in the new ring.
    pub a_offset: usize,
    /// Number of a-variables (n − 1).
    pub a_len: usize,
    /// β images of the old variables, in the new ring.
    pub beta: Vec<Poly>,
}

pub fn grassmann_modification(
    p: &GermPresentation,
    chart: usize,
) -> Result<GrassmannModification, GermError> {
    let n = p.n();
    let k = p.y_len;
    if n < 2 {
        return Err(GermError::FiberTooSmall);
    }
    assert!(chart < n, "chart index outside the fiber block");
    let chart_var = k + chart;

    let kept: Vec<usize> = p.z_vars().filter(|&i| i != chart_var).collect();
    let mut names: Vec<String> = p.y_vars().map(|i| p.ring.var_name(i).to_string()).collect();
    let mut a_names = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut name = format!("a{i}");
        while p.ring.var_index(&name).is_some() || a_names.contains(&name) {
            name.push('_');
        }
        a_names.push(name);
    }
    names.extend(a_names.iter().cloned());
    names.extend(kept.iter().map(|&i| p.ring.var_name(i).to_string()));
    let big = PolyRing::new(names, p.ring.order());
    let a_offset = k;
    let a_len = n - 1;
    let z_offset = k + a_len;

    // β images of the old variables.
    let mut beta = Vec::with_capacity(p.ring.arity());
    for i in 0..p.ring.arity() {
        if i < k {
            beta.push(Poly::var(&big, i));
        } else if i == chart_var {
            let mut acc = Poly::zero(&big);
            for j in 0..a_len {
                acc = acc.add(
                    &Poly::var(&big, a_offset + j).mul(&Poly::var(&big, z_offset + j)),
                );
            }
            beta.push(acc);
        } else {
            let pos = kept.iter().position(|&v| v == i).expect("kept variable");
            beta.push(Poly::var(&big, z_offset + pos));
        }
    }

    let g: Vec<Poly> = p
        .components
        .iter()
        .map(|f| f.subst(&big, &beta))
        .collect();

    // Chain-rule identities, verified as exact polynomial equalities.
    for (ci, f) in p.components.iter().enumerate() {
        let dfn = f.diff(chart_var).subst(&big, &beta);
        for j in 0..a_len {
            let lhs = g[ci].diff(a_offset + j);
            let rhs = Poly::var(&big, z_offset + j).mul(&dfn);
            if lhs != rhs {
                return Err(GermError::IdentityFailure {
                    identity: format!("dG/da{}", j + 1),
                    component: ci,
                });
            }
        }
        for yi in 0..k {
            let lhs = g[ci].diff(yi);
            let rhs = f.diff(yi).subst(&big, &beta);
            if lhs != rhs {
                return Err(GermError::IdentityFailure {
                    identity: format!("dG/dy{yi}"),
                    component: ci,
                });
            }
        }
        for (j, &old) in kept.iter().enumerate() {
            let lhs = g[ci].diff(z_offset + j);
            let rhs = f
                .diff(old)
                .subst(&big, &beta)
                .add(&Poly::var(&big, a_offset + j).mul(&dfn));
            if lhs != rhs {
                return Err(GermError::IdentityFailure {
                    identity: format!("dG/dz'{}", j + 1),
                    component: ci,
                });
            }
        }
    }

    let mut presentation = GermPresentation::new(
        format!("{}~grassmann(chart {})", p.name, p.ring.var_name(chart_var)),
        big,
        k + a_len,
        g,
    )?;
    presentation.equidimensional = p.equidimensional;
    presentation.wa = p.wa;
    presentation.dim = p.dim.map(|d| d + a_len);
    Ok(GrassmannModification {
        presentation,
        chart,
        a_offset,
        a_len,
        beta,
    })
}

impl GrassmannModification {
    /// Translate the a-chart so that a = 0 becomes the point `a0`
    /// (substitute aᵢ ↦ aᵢ + a0ᵢ).
    pub fn shift_chart(&self, a0: &[Q]) -> GermPresentation {
        assert_eq!(a0.len(), self.a_len);
        let ring = &self.presentation.ring;
        let images: Vec<Poly> = (0..ring.arity())
            .map(|i| {
                let v = Poly::var(ring, i);
                if i >= self.a_offset && i < self.a_offset + self.a_len {
                    v.add(&Poly::constant(ring, a0[i - self.a_offset].clone()))
                } else {
                    v
                }
            })
            .collect();
        let mut out = self.presentation.clone();
        out.name = format!("{}@shifted", self.presentation.name);
        out.components = out
            .components
            .iter()
            .map(|f| f.subst(ring, &images))
            .collect();
        out
    }
}

/// Build the modification centered at the chart point of `h` (a hyperplane
/// containing Y): the chart is the largest fiber index with a nonzero
/// coefficient, and the a-origin is moved so a = 0 corresponds to `h`.
pub fn grassmann_at_hyperplane(
    p: &GermPresentation,
    h: &Hyperplane,
) -> Result<(GrassmannModification, GermPresentation), GermError> {
    let zc = h.z_coeffs(p.y_len);
    let chart = zc
        .iter()
        .rposition(|c| !is_zero(c))
        .ok_or(GermError::NoChart)?;
    let gm = grassmann_modification(p, chart)?;
    let c_chart = zc[chart].clone();
    let a0: Vec<Q> = (0..p.n())
        .filter(|&j| j != chart)
        .map(|j| -(&zc[j] / &c_chart))
        .collect();
    let shifted = gm.shift_chart(&a0);
    Ok((gm, shifted))
}

/// All s×s minors of a polynomial matrix (row combination outer, column
/// combination inner, both ascending).
pub fn matrix_minors(m: &[Vec<Poly>], s: usize) -> Vec<Poly> {
    if s == 0 || m.is_empty() {
        return Vec::new();
    }
    let rows = m.len();
    let cols = m[0].len();
    if s > rows || s > cols {
        return Vec::new();
    }
    let ring = m[0][0].ring().clone();
    let mut out = Vec::new();
    for rsel in (0..rows).combinations(s) {
        for csel in (0..cols).combinations(s) {
            let sub: Vec<Vec<Poly>> = rsel
                .iter()
                .map(|&r| csel.iter().map(|&c| m[r][c].clone()).collect())
                .collect();
            out.push(poly_det(&sub, &ring));
        }
    }
    out
}

fn poly_det(m: &[Vec<Poly>], ring: &PolyRing) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(ring);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(ring);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = entry.mul(&poly_det(&minor, ring));
        if j % 2 == 0 {
            acc = acc.add(&cof);
        } else {
            acc = acc.sub(&cof);
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("second-structure generator {index} is not in the first structure's ideal")]
    NotInIdeal { index: usize },
    #[error("structure generator {index} is not radical-member of the second ideal: V(I) = V(J) spot-check failed")]
    VarietyMismatch { index: usize },
    #[error("no exponent r <= {cap} with K^r·J contained in I")]
    ExponentCapExhausted { cap: u32 },
}

/// The replayable witnesses behind structure blindness: `H₀·f = g`,
/// `H₁·g = H₂·f` where the rows of `H₂` are `k_jʳ·e_t`.
#[derive(Clone, Debug)]
pub struct WitnessMatrices {
    /// g_j = Σ_l h0[j][l] · f_l, exactly.
    pub h0: Vec<Vec<Poly>>,
    /// Row (j, t): k_j^r · f_t = Σ_l h1[row][l] · g_l, exactly.
    pub h1: Vec<Vec<Poly>>,
    /// Row (j, t): the sparse row k_j^r · e_t.
    pub h2: Vec<Vec<Poly>>,
    pub r: u32,
    /// Generators of the singular-locus ideal K used for the exponent.
    pub k_gens: Vec<Poly>,
}

/// Exponent cap for the K^r·J ⊆ I search.
pub const WITNESS_EXPONENT_CAP: u32 = 16;

/// Witness matrices relating two structures `f` (ideal J) and `g` (ideal I)
/// with the same zero set: certificates for (g) ⊆ (f), a radical spot-check
/// for the reverse inclusion of varieties, and the minimal r ≤ cap with
/// K^r·J ⊆ I, where K defaults to (f) + the Jacobian-criterion minors of
/// codimension size (`codim = arity − dim`). All identities are verified
/// exactly before returning.
pub fn structure_witnesses(
    ring: &PolyRing,
    f: &[Poly],
    g: &[Poly],
    k_override: Option<&[Poly]>,
    dim: usize,
    r_cap: u32,
) -> Result<WitnessMatrices, WitnessError> {
    let f_ideal = IdealSpec::new(ring.clone(), f.to_vec());
    let g_ideal = IdealSpec::new(ring.clone(), g.to_vec());

    // H0: each g_j expressed over (f).
    let mut h0 = Vec::with_capacity(g.len());
    for (j, gj) in g.iter().enumerate() {
        let cert = f_ideal.membership(gj);
        if !cert.member {
            return Err(WitnessError::NotInIdeal { index: j });
        }
        h0.push(cert.gen_coeffs);
    }

    // V(I) = V(J) spot-check: every f_i vanishes on V(g).
    for (i, fi) in f.iter().enumerate() {
        if !radical_membership(&g_ideal, fi).member {
            return Err(WitnessError::VarietyMismatch { index: i });
        }
    }

    let k_gens: Vec<Poly> = match k_override {
        Some(k) => k.to_vec(),
        None => {
            let codim = ring.arity().saturating_sub(dim);
            let mut k = f.to_vec();
            k.extend(matrix_minors(&jacobian_matrix(f), codim));
            k.retain(|p| !p.is_zero());
            k
        }
    };

    // Minimal r with every degree-r K-product times every f_t in (g).
    let g_gb = g_ideal.groebner(true);
    let contained = |r: u32| -> bool {
        (0..k_gens.len())
            .combinations_with_replacement(r as usize)
            .all(|combo| {
                let kappa = combo
                    .into_iter()
                    .fold(Poly::one(ring), |acc, i| acc.mul(&k_gens[i]));
                f.iter().all(|ft| {
                    let (_, rem) = g_gb.express(&Vect::from_poly(kappa.mul(ft)));
                    rem.is_zero()
                })
            })
    };
    let r = (0..=r_cap)
        .find(|&r| contained(r))
        .ok_or(WitnessError::ExponentCapExhausted { cap: r_cap })?;

    // H1/H2 rows: pure powers k_j^r against each f_t.
    let mut h1 = Vec::new();
    let mut h2 = Vec::new();
    for kj in &k_gens {
        let kr = kj.pow(r);
        for (t, ft) in f.iter().enumerate() {
            let target = kr.mul(ft);
            let (coeffs, rem) = g_gb.express(&Vect::from_poly(target));
            assert!(rem.is_zero(), "pure-power certificate must exist");
            h1.push(coeffs);
            let mut sparse = vec![Poly::zero(ring); f.len()];
            sparse[t] = kr.clone();
            h2.push(sparse);
        }
    }

    // Replay all identities exactly.
    for (j, row) in h0.iter().enumerate() {
        let mut acc = Poly::zero(ring);
        for (c, fl) in row.iter().zip(f) {
            acc = acc.add(&c.mul(fl));
        }
        assert_eq!(acc, g[j], "H0 identity failed");
    }
    for (row1, row2) in h1.iter().zip(&h2) {
        let mut lhs = Poly::zero(ring);
        for (c, gl) in row1.iter().zip(g) {
            lhs = lhs.add(&c.mul(gl));
        }
        let mut rhs = Poly::zero(ring);
        for (c, fl) in row2.iter().zip(f) {
            rhs = rhs.add(&c.mul(fl));
        }
        assert_eq!(lhs, rhs, "H1·g = H2·f identity failed");
    }

    Ok(WitnessMatrices {
        h0,
        h1,
        h2,
        r,
        k_gens,
    })
}
