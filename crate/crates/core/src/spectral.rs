//! Characters of finite abelian groups and the spectra of Cayley graphs.
//!
//! The character indexed by `alpha` sends `x` to `prod_i zeta_i^(alpha_i x_i)`
//! where `zeta_i = exp(2 pi i / n_i)`. Characters are indexed by group
//! elements in canonical order, so spectrum entries line up with the rows of
//! the character matrix.
//!
//! For a symmetric shift set `S` the character sum `psi_alpha(S)` is the
//! eigenvalue of `Cay(G, S)` belonging to the eigenvector `(psi_alpha(v_j))_j`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::algebra::in_boolean_algebra;
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, GroupSubset, DEFAULT_ORDER_CAP};

/// Default tolerance for rounding eigenvalues to integers.
pub const INTEGRALITY_TOL: f64 = 1e-6;

/// Per-unit-of-order tolerance for exact identities (orthogonality, eigenvectors).
pub const IDENTITY_TOL_PER_ORDER: f64 = 1e-9;

/// Recovered characteristic-vector entries farther than this from 0 or 1 are rejected.
pub const RECOVERY_TOL: f64 = 0.1;

/// Character values of one group, computed from an integer phase.
///
/// `psi_alpha(x) = exp(2 pi i t / L)` where `L` is the group exponent and
/// `t = sum_i (alpha_i x_i mod n_i) (L / n_i) mod L`. Reducing the phase in
/// integers first keeps every value on an exact table of `L`-th roots.
pub(crate) struct CharacterTable {
    group: GroupSpec,
    exponent: usize,
    weights: Vec<usize>,
    roots: Vec<Complex64>,
    coords: Vec<Vec<usize>>,
}

impl CharacterTable {
    pub(crate) fn new(g: &GroupSpec) -> Self {
        let exponent = g.exponent();
        let weights = g.moduli().iter().map(|&m| exponent / m).collect();
        let roots = (0..exponent)
            .map(|t| Complex64::from_polar(1.0, std::f64::consts::TAU * t as f64 / exponent as f64))
            .collect();
        let coords = g.elements().map(|e| e.coords().to_vec()).collect();
        Self {
            group: g.clone(),
            exponent,
            weights,
            roots,
            coords,
        }
    }

    fn phase(&self, alpha: &[usize], x: &[usize]) -> usize {
        let mut t = 0;
        for ((&a, &xi), (&m, &w)) in alpha
            .iter()
            .zip(x)
            .zip(self.group.moduli().iter().zip(&self.weights))
        {
            t = (t + ((a * xi) % m) * w) % self.exponent;
        }
        t
    }

    /// Value of the character with canonical index `alpha` at element index `x`.
    pub(crate) fn value(&self, alpha: usize, x: usize) -> Complex64 {
        self.roots[self.phase(&self.coords[alpha], &self.coords[x])]
    }

    /// `psi_alpha(S)`, summed in canonical element order.
    pub(crate) fn sum(&self, alpha: usize, s: &GroupSubset) -> Complex64 {
        s.indices().map(|x| self.value(alpha, x)).sum()
    }

    /// `psi_alpha(S)` for every alpha in canonical order.
    pub(crate) fn sums(&self, s: &GroupSubset) -> Vec<Complex64> {
        (0..self.group.order()).map(|a| self.sum(a, s)).collect()
    }
}

/// `psi_alpha(x)`.
pub fn character_value(g: &GroupSpec, alpha: &Element, x: &Element) -> Result<Complex64> {
    let alpha = g.element(alpha.coords().to_vec())?;
    let x = g.element(x.coords().to_vec())?;
    let exponent = g.exponent();
    let t = alpha
        .coords()
        .iter()
        .zip(x.coords())
        .zip(g.moduli())
        .fold(0, |t, ((&a, &xi), &m)| {
            (t + ((a * xi) % m) * (exponent / m)) % exponent
        });
    Ok(Complex64::from_polar(
        1.0,
        std::f64::consts::TAU * t as f64 / exponent as f64,
    ))
}

/// `psi_alpha(S) = sum_{s in S} psi_alpha(s)`; zero for the empty set.
pub fn character_sum(g: &GroupSpec, alpha: &Element, s: &GroupSubset) -> Result<Complex64> {
    if s.group() != g {
        return Err(Error::GroupMismatch {
            left: g.label(),
            right: s.group().label(),
        });
    }
    let alpha = g.element(alpha.coords().to_vec())?;
    let table = CharacterTable::new(g);
    Ok(table.sum(g.index_of(&alpha), s))
}

/// One eigenvalue together with the character that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub alpha: Element,
    pub value: Complex64,
}

/// Eigenvalues of a Cayley graph (or of a generalized distance matrix),
/// one per character, in canonical character order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    group: GroupSpec,
    entries: Vec<SpectrumEntry>,
}

#[derive(Serialize)]
struct SpectrumJsonOut<'a> {
    group: String,
    order: usize,
    entries: Vec<EntryJsonOut<'a>>,
}

#[derive(Serialize)]
struct EntryJsonOut<'a> {
    alpha: &'a [usize],
    re: Box<RawValue>,
    im: Box<RawValue>,
}

#[derive(Deserialize)]
struct SpectrumJsonIn {
    group: String,
    order: usize,
    entries: Vec<EntryJsonIn>,
}

#[derive(Deserialize)]
struct EntryJsonIn {
    alpha: Vec<usize>,
    re: f64,
    im: f64,
}

/// Formats a float with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{:.16e}", x)
}

fn raw_float(x: f64) -> Box<RawValue> {
    RawValue::from_string(format_float(x)).expect("scientific notation is valid JSON")
}

impl Spectrum {
    /// Builds a spectrum from eigenvalues listed in canonical character order.
    pub fn from_values(g: &GroupSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != g.order() {
            return Err(Error::SpectrumLength {
                expected: g.order(),
                found: values.len(),
            });
        }
        let entries = g
            .elements()
            .zip(values)
            .map(|(alpha, value)| SpectrumEntry { alpha, value })
            .collect();
        Ok(Self {
            group: g.clone(),
            entries,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    /// Real parts, ascending.
    pub fn sorted_real_parts(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.entries.iter().map(|e| e.value.re).collect();
        out.sort_by(f64::total_cmp);
        out
    }

    /// Whether every eigenvalue is within `tol` of a real integer.
    pub fn is_integral(&self, tol: f64) -> bool {
        self.entries
            .iter()
            .all(|e| e.value.im.abs() <= tol && (e.value.re - e.value.re.round()).abs() <= tol)
    }

    /// Eigenvalues rounded to the nearest integer, if the spectrum is integral.
    pub fn rounded(&self, tol: f64) -> Option<Vec<i64>> {
        self.is_integral(tol).then(|| {
            self.entries
                .iter()
                .map(|e| e.value.re.round() as i64)
                .collect()
        })
    }

    pub fn to_json(&self) -> String {
        let out = SpectrumJsonOut {
            group: self.group.label(),
            order: self.group.order(),
            entries: self
                .entries
                .iter()
                .map(|e| EntryJsonOut {
                    alpha: e.alpha.coords(),
                    re: raw_float(e.value.re),
                    im: raw_float(e.value.im),
                })
                .collect(),
        };
        serde_json::to_string(&out).expect("spectrum serializes")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let parsed: SpectrumJsonIn =
            serde_json::from_str(json).map_err(|e| Error::Json(e.to_string()))?;
        let g: GroupSpec = parsed.group.parse()?;
        if parsed.order != g.order() || parsed.entries.len() != g.order() {
            return Err(Error::SpectrumLength {
                expected: g.order(),
                found: parsed.entries.len(),
            });
        }
        let mut values = vec![None; g.order()];
        for entry in parsed.entries {
            let alpha = g.element(entry.alpha)?;
            values[g.index_of(&alpha)] = Some(Complex64::new(entry.re, entry.im));
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Json("duplicate character index".into()))?;
        Self::from_values(&g, values)
    }
}

/// Spectrum of `Cay(G, S)`: `psi_alpha(S)` for every character.
pub fn spectrum(s: &GroupSubset) -> Result<Spectrum> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(spectrum_of_sums(s))
}

pub(crate) fn spectrum_of_sums(s: &GroupSubset) -> Spectrum {
    let table = CharacterTable::new(s.group());
    Spectrum::from_values(s.group(), table.sums(s)).expect("one sum per character")
}

/// The matrix `H` with `h[i][j] = psi_i(v_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterMatrix {
    group: GroupSpec,
    rows: Vec<Vec<Complex64>>,
}

impl CharacterMatrix {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.rows[i][j]
    }

    /// `max |(H conj(H)^T - n I)_{ij}|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.rows.len();
        let mut worst = 0.0f64;
        for (i, ri) in self.rows.iter().enumerate() {
            for (j, rj) in self.rows.iter().enumerate() {
                let dot: Complex64 = ri.iter().zip(rj).map(|(a, b)| a * b.conj()).sum();
                let target = if i == j { n as f64 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    /// `H w`: maps a characteristic vector to the eigenvalue vector.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(h, x)| h * x).sum())
            .collect()
    }
}

pub fn character_matrix(g: &GroupSpec) -> Result<CharacterMatrix> {
    character_matrix_capped(g, DEFAULT_ORDER_CAP)
}

pub fn character_matrix_capped(g: &GroupSpec, cap: usize) -> Result<CharacterMatrix> {
    g.check_cap(cap)?;
    let table = CharacterTable::new(g);
    let n = g.order();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| table.value(i, j)).collect())
        .collect();
    Ok(CharacterMatrix {
        group: g.clone(),
        rows,
    })
}

/// Both routes to integrality of `Cay(G, S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralityVerdict {
    /// `S` is a union of atoms.
    pub structural: bool,
    /// Every eigenvalue rounds to an integer within tolerance.
    pub spectral: bool,
}

impl IntegralityVerdict {
    pub fn agrees(&self) -> bool {
        self.structural == self.spectral
    }
}

pub fn integrality_verdict(s: &GroupSubset, tol: f64) -> IntegralityVerdict {
    IntegralityVerdict {
        structural: in_boolean_algebra(s),
        spectral: spectrum_of_sums(s).is_integral(tol),
    }
}

/// Whether all eigenvalues of `Cay(G, S)` are integers within `tol`.
///
/// Logs a warning when the numeric answer disagrees with atom-union
/// membership; such a disagreement means a bug or a tolerance that is too
/// tight or too loose.
pub fn is_integral_spectrum(s: &GroupSubset, tol: f64) -> bool {
    let verdict = integrality_verdict(s, tol);
    if !verdict.agrees() {
        log::warn!(
            "integrality disagreement on {} subset {}: structural={}, spectral={} (tol {tol:e})",
            s.group(),
            s,
            verdict.structural,
            verdict.spectral,
        );
    }
    verdict.spectral
}

/// Recovers `S` from its spectrum by inverting `H chi_S = w`.
///
/// Uses `chi_S = conj(H)^T w / n` and rounds each entry to 0 or 1.
pub fn recover_subset(spec: &Spectrum) -> Result<GroupSubset> {
    let g = spec.group();
    let n = g.order();
    let table = CharacterTable::new(g);
    let values = spec.values();
    let mut mask = vec![false; n];
    for (j, slot) in mask.iter_mut().enumerate() {
        let chi: Complex64 = values
            .iter()
            .enumerate()
            .map(|(i, w)| table.value(i, j).conj() * w)
            .sum::<Complex64>()
            / n as f64;
        let rounded = if chi.re >= 0.5 { 1.0 } else { 0.0 };
        let off = (chi - Complex64::new(rounded, 0.0)).norm();
        if off > RECOVERY_TOL {
            return Err(Error::InconsistentSpectrum {
                index: j,
                value: chi.re,
            });
        }
        *slot = rounded == 1.0;
    }
    GroupSubset::from_mask(g, mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn idx(group: &GroupSpec, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_indices(group, xs.iter().copied()).unwrap()
    }

    fn el(group: &GroupSpec, xs: &[usize]) -> Element {
        group.element(xs.to_vec()).unwrap()
    }

    #[test]
    fn character_value_examples() {
        let z6 = g("6");
        for x in z6.elements() {
            let v = character_value(&z6, &z6.identity(), &x).unwrap();
            assert!(close(v.re, 1.0) && close(v.im, 0.0));
        }
        let z4 = g("4");
        let v = character_value(&z4, &el(&z4, &[1]), &el(&z4, &[1])).unwrap();
        assert!(close(v.re, 0.0) && close(v.im, 1.0));
        let klein = g("2x2");
        let v = character_value(&klein, &el(&klein, &[1, 0]), &el(&klein, &[1, 1])).unwrap();
        assert!(close(v.re, -1.0) && close(v.im, 0.0));
    }

    #[test]
    fn character_values_have_unit_modulus() {
        let grp = g("4x6");
        for a in grp.elements() {
            for x in grp.elements() {
                let v = character_value(&grp, &a, &x).unwrap();
                assert!((v.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn character_sum_examples() {
        let z6 = g("6");
        let s = idx(&z6, &[1, 2, 5]);
        let v = character_sum(&z6, &z6.identity(), &s).unwrap();
        assert!(close(v.re, 3.0));
        let h = idx(&z6, &[0, 3]);
        let v = character_sum(&z6, &el(&z6, &[1]), &h).unwrap();
        assert!(v.norm() < 1e-12);
        let v = character_sum(&z6, &el(&z6, &[1]), &idx(&z6, &[1, 5])).unwrap();
        assert!((v.re - 1.0).abs() < 1e-12 && v.im.abs() < 1e-12);
        let v = character_sum(&z6, &el(&z6, &[1]), &GroupSubset::empty(&z6)).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn spectrum_examples() {
        let z6 = g("6");
        let zero = spectrum(&GroupSubset::empty(&z6)).unwrap();
        assert!(zero.values().iter().all(|v| v.norm() == 0.0));

        let z4 = g("4");
        let reals = spectrum(&idx(&z4, &[1, 3])).unwrap().sorted_real_parts();
        for (got, want) in reals.iter().zip([-2.0, 0.0, 0.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }

        let z5 = g("5");
        let reals = spectrum(&idx(&z5, &[1, 4])).unwrap().sorted_real_parts();
        assert!(reals
            .iter()
            .any(|v| (v - 0.618_033_988_749_894_8).abs() < 1e-12));

        assert_eq!(spectrum(&idx(&z5, &[1])), Err(Error::NotSymmetric));
    }

    #[test]
    fn loop_shifts_every_eigenvalue_by_one() {
        let z6 = g("6");
        let plain = spectrum(&idx(&z6, &[1, 5])).unwrap().values();
        let looped = spectrum(&idx(&z6, &[0, 1, 5])).unwrap().values();
        for (a, b) in plain.iter().zip(&looped) {
            assert!((b - a - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn character_matrix_examples() {
        let m = character_matrix(&g("1")).unwrap();
        assert_eq!(m.rows(), &[vec![Complex64::new(1.0, 0.0)]]);
        let m = character_matrix(&g("2")).unwrap();
        let want = [[1.0, 1.0], [1.0, -1.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert!((m.get(i, j) - Complex64::new(w, 0.0)).norm() < 1e-12);
            }
        }
        let m = character_matrix(&g("2x2")).unwrap();
        for row in m.rows() {
            for v in row {
                assert!(v.im.abs() < 1e-12 && (v.re.abs() - 1.0).abs() < 1e-12);
            }
        }
        assert!(m.orthogonality_defect() < 1e-9 * 4.0);
        assert!(matches!(
            character_matrix_capped(&g("8"), 4),
            Err(Error::OrderCap { order: 8, cap: 4 })
        ));
    }

    #[test]
    fn integrality_examples() {
        let z6 = g("6");
        assert!(is_integral_spectrum(&idx(&z6, &[1, 5]), INTEGRALITY_TOL));
        assert!(is_integral_spectrum(
            &GroupSubset::empty(&z6),
            INTEGRALITY_TOL
        ));
        let z5 = g("5");
        assert!(!is_integral_spectrum(&idx(&z5, &[1, 4]), INTEGRALITY_TOL));
        let verdict = integrality_verdict(&idx(&z5, &[1, 4]), INTEGRALITY_TOL);
        assert_eq!(
            verdict,
            IntegralityVerdict {
                structural: false,
                spectral: false
            }
        );
    }

    #[test]
    fn recovery_examples() {
        let z6 = g("6");
        let zero = Spectrum::from_values(&z6, vec![Complex64::new(0.0, 0.0); 6]).unwrap();
        assert!(recover_subset(&zero).unwrap().is_empty());
        let s = idx(&z6, &[1, 5]);
        assert_eq!(recover_subset(&spectrum(&s).unwrap()).unwrap(), s);

        let g42 = g("4x2");
        let atom = crate::algebra::atom_of(&g42, &el(&g42, &[1, 1])).unwrap();
        assert_eq!(recover_subset(&spectrum(&atom).unwrap()).unwrap(), atom);

        let bad = Spectrum::from_values(&z6, vec![Complex64::new(0.5, 0.0); 6]).unwrap();
        assert!(matches!(
            recover_subset(&bad),
            Err(Error::InconsistentSpectrum { .. })
        ));
    }

    #[test]
    fn spectrum_json_round_trip() {
        let grp = g("2x3");
        let s = idx(&grp, &[0, 1, 2]);
        let spec = spectrum(&s).unwrap();
        let json = spec.to_json();
        assert!(json.starts_with(
            r#"{"group":"2x3","order":6,"entries":[{"alpha":[0,0],"re":3.0000000000000000e0"#
        ));
        let back = Spectrum::from_json(&json).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn float_format_has_17_significant_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(-2.0), "-2.0000000000000000e0");
    }
}
