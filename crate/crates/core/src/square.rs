//! Quantum Latin squares and row-quantum Latin rectangles: exact
//! verification and cardinality counting.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebraic::RadExt;
use crate::error::{Error, Result};
use crate::vectors::{canonicalize, inner_product, phase_equal_by_overlap, CanonicalVector, QVector};

/// A set of phase classes, ordered for deterministic output.
pub type ElementSet = BTreeSet<CanonicalVector>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotUnit {
        row: usize,
        col: usize,
        norm_squared: RadExt,
    },
    /// `first` and `second` index positions along `line`.
    NotOrthogonal {
        line: Line,
        first: usize,
        second: usize,
        inner_product: RadExt,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotUnit { row, col, norm_squared } => {
                write!(f, "cell ({row},{col}) is not a unit vector (norm squared {norm_squared})")
            }
            Violation::NotOrthogonal {
                line: Line::Row(r),
                first,
                second,
                inner_product,
            } => write!(
                f,
                "row {r}: cells ({r},{first}) and ({r},{second}) are not orthogonal (inner product {inner_product})"
            ),
            Violation::NotOrthogonal {
                line: Line::Column(c),
                first,
                second,
                inner_product,
            } => write!(
                f,
                "column {c}: cells ({first},{c}) and ({second},{c}) are not orthogonal (inner product {inner_product})"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub violation: Option<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => f.write_str("pass"),
            Some(v) => write!(f, "fail: {v}"),
        }
    }
}

/// An `n x n` array of `n`-dimensional vectors. Construction only checks
/// the shape; use [`QlsGrid::verify`] for the orthonormality axioms.
#[derive(Clone, Debug)]
pub struct QlsGrid {
    order: usize,
    provenance: String,
    cells: Vec<Vec<QVector>>,
    verified: OnceLock<VerifyReport>,
}

impl PartialEq for QlsGrid {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.provenance == other.provenance && self.cells == other.cells
    }
}

impl Eq for QlsGrid {}

impl QlsGrid {
    pub fn new(provenance: impl Into<String>, cells: Vec<Vec<QVector>>) -> Result<Self> {
        let order = cells.len();
        if order == 0 {
            return Err(Error::Shape("a square needs at least one row".into()));
        }
        for (r, row) in cells.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Shape(format!(
                    "row {r} has {} cells, expected {order}",
                    row.len()
                )));
            }
            if let Some((c, v)) = row.iter().enumerate().find(|(_, v)| v.dim() != order) {
                return Err(Error::Shape(format!(
                    "cell ({r},{c}) has dimension {}, expected {order}",
                    v.dim()
                )));
            }
        }
        Ok(Self {
            order,
            provenance: provenance.into(),
            cells,
            verified: OnceLock::new(),
        })
    }

    /// Lifts a classical Latin square over `0..n` to the computational basis.
    pub fn from_classical(provenance: impl Into<String>, symbols: &[Vec<usize>]) -> Result<Self> {
        let n = symbols.len();
        let cells = symbols
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&s| {
                        if s < n {
                            Ok(QVector::basis(n, s))
                        } else {
                            Err(Error::Shape(format!("symbol {s} out of range for order {n}")))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(provenance, cells)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn cells(&self) -> &[Vec<QVector>] {
        &self.cells
    }

    pub fn cell(&self, row: usize, col: usize) -> &QVector {
        &self.cells[row][col]
    }

    /// Verification result, computed once and cached.
    pub fn verify(&self) -> &VerifyReport {
        self.verified.get_or_init(|| verify_qls(self))
    }

    pub fn is_qls(&self) -> bool {
        self.verify().passed()
    }

    fn require_verified(&self) -> Result<()> {
        match &self.verify().violation {
            None => Ok(()),
            Some(v) => Err(Error::Unverified(v.to_string())),
        }
    }
}

fn first_non_orthogonal(line: Line, cells: &[&QVector]) -> Option<Violation> {
    for a in 0..cells.len() {
        for b in a + 1..cells.len() {
            let ip = inner_product(cells[a], cells[b]).expect("grid cells share a dimension");
            if !ip.is_zero() {
                return Some(Violation::NotOrthogonal {
                    line,
                    first: a,
                    second: b,
                    inner_product: ip,
                });
            }
        }
    }
    None
}

/// Checks all `n^2` unit equations and `2n * C(n,2)` orthogonality
/// equations exactly. Reports the first failure in the order: units
/// (row-major), rows, columns.
pub fn verify_qls(grid: &QlsGrid) -> VerifyReport {
    let n = grid.order;
    let not_unit = (0..n * n).into_par_iter().find_map_first(|idx| {
        let (row, col) = (idx / n, idx % n);
        let norm_squared = grid.cells[row][col].norm_squared();
        (norm_squared != RadExt::one()).then_some(Violation::NotUnit { row, col, norm_squared })
    });
    if not_unit.is_some() {
        return VerifyReport { violation: not_unit };
    }
    let violation = (0..2 * n).into_par_iter().find_map_first(|k| {
        if k < n {
            let row: Vec<&QVector> = grid.cells[k].iter().collect();
            first_non_orthogonal(Line::Row(k), &row)
        } else {
            let c = k - n;
            let column: Vec<&QVector> = grid.cells.iter().map(|row| &row[c]).collect();
            first_non_orthogonal(Line::Column(c), &column)
        }
    });
    VerifyReport { violation }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementClass {
    pub representative: CanonicalVector,
    pub positions: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityReport {
    pub cardinality: usize,
    /// Phase classes in order of first appearance (row-major).
    pub classes: Vec<ElementClass>,
}

fn canonical_cells(grid: &QlsGrid) -> Vec<CanonicalVector> {
    grid.cells
        .par_iter()
        .flat_map_iter(|row| row.iter().map(|v| canonicalize(v).expect("unit cells are nonzero")))
        .collect()
}

/// Counts phase classes by hashing canonical representatives.
pub fn cardinality(grid: &QlsGrid) -> Result<CardinalityReport> {
    grid.require_verified()?;
    let n = grid.order;
    let mut index: HashMap<CanonicalVector, usize> = HashMap::new();
    let mut classes: Vec<ElementClass> = Vec::new();
    for (idx, canonical) in canonical_cells(grid).into_iter().enumerate() {
        let position = (idx / n, idx % n);
        match index.get(&canonical) {
            Some(&k) => classes[k].positions.push(position),
            None => {
                index.insert(canonical.clone(), classes.len());
                classes.push(ElementClass {
                    representative: canonical,
                    positions: vec![position],
                });
            }
        }
    }
    Ok(CardinalityReport {
        cardinality: classes.len(),
        classes,
    })
}

/// Independent cardinality oracle: a cell opens a new class unless
/// `<u,v>^2 = 1` against some earlier class representative.
pub fn cardinality_pairwise(grid: &QlsGrid) -> Result<usize> {
    grid.require_verified()?;
    let mut representatives: Vec<&QVector> = Vec::new();
    for v in grid.cells.iter().flatten() {
        let mut seen = false;
        for r in &representatives {
            if phase_equal_by_overlap(v, r)? {
                seen = true;
                break;
            }
        }
        if !seen {
            representatives.push(v);
        }
    }
    Ok(representatives.len())
}

/// Which counting route [`count_cardinality`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CountMethod {
    #[default]
    Canonical,
    /// Canonical count cross-checked against the pairwise oracle.
    CrossChecked,
}

pub fn count_cardinality(grid: &QlsGrid, method: CountMethod) -> Result<usize> {
    let canonical = cardinality(grid)?.cardinality;
    if method == CountMethod::CrossChecked {
        let pairwise = cardinality_pairwise(grid)?;
        if pairwise != canonical {
            return Err(Error::Internal(format!(
                "canonical count {canonical} disagrees with pairwise count {pairwise}"
            )));
        }
    }
    Ok(canonical)
}

pub fn distinct_elements(grid: &QlsGrid) -> Result<ElementSet> {
    grid.require_verified()?;
    Ok(canonical_cells(grid).into_iter().collect())
}

/// Number of phase classes of `grid` not present in `baseline`.
pub fn count_new_elements(grid: &QlsGrid, baseline: &ElementSet) -> Result<usize> {
    Ok(distinct_elements(grid)?.difference(baseline).count())
}

/// An `m x n` array of `n`-dimensional vectors whose rows are orthonormal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowQlr {
    cols: usize,
    cells: Vec<Vec<QVector>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowQlrReport {
    pub violation: Option<Violation>,
    /// Pairs of rows that coincide cell-by-cell up to phase.
    pub duplicate_rows: Vec<(usize, usize)>,
}

impl RowQlrReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl RowQlr {
    pub fn new(cells: Vec<Vec<QVector>>) -> Result<Self> {
        let cols = cells.first().map_or(0, Vec::len);
        if cells.is_empty() || cols == 0 {
            return Err(Error::Shape("a rectangle needs at least one cell".into()));
        }
        for (r, row) in cells.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {r} has {} cells, expected {cols}", row.len())));
            }
            if let Some((c, v)) = row.iter().enumerate().find(|(_, v)| v.dim() != cols) {
                return Err(Error::Shape(format!(
                    "cell ({r},{c}) has dimension {}, expected {cols}",
                    v.dim()
                )));
            }
        }
        Ok(Self { cols, cells })
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, row: usize, col: usize) -> &QVector {
        &self.cells[row][col]
    }

    pub fn cells(&self) -> &[Vec<QVector>] {
        &self.cells
    }
}

pub fn verify_row_qlr(rect: &RowQlr) -> RowQlrReport {
    let mut violation = None;
    'outer: for (r, row) in rect.cells.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let norm_squared = v.norm_squared();
            if norm_squared != RadExt::one() {
                violation = Some(Violation::NotUnit { row: r, col: c, norm_squared });
                break 'outer;
            }
        }
        let refs: Vec<&QVector> = row.iter().collect();
        if let Some(v) = first_non_orthogonal(Line::Row(r), &refs) {
            violation = Some(v);
            break;
        }
    }
    let mut duplicate_rows = Vec::new();
    if violation.is_none() {
        let canonical: Vec<Vec<CanonicalVector>> = rect
            .cells
            .iter()
            .map(|row| row.iter().map(|v| canonicalize(v).expect("unit")).collect())
            .collect();
        for a in 0..canonical.len() {
            for b in a + 1..canonical.len() {
                if canonical[a] == canonical[b] {
                    duplicate_rows.push((a, b));
                }
            }
        }
    }
    RowQlrReport {
        violation,
        duplicate_rows,
    }
}

pub fn row_qlr_elements(rect: &RowQlr) -> Result<ElementSet> {
    if let Some(v) = verify_row_qlr(rect).violation {
        return Err(Error::Unverified(v.to_string()));
    }
    rect.cells.iter().flatten().map(canonicalize).collect()
}

pub fn row_qlr_cardinality(rect: &RowQlr) -> Result<usize> {
    Ok(row_qlr_elements(rect)?.len())
}

#[derive(Serialize)]
struct GridRepr<'a> {
    order: usize,
    provenance: &'a str,
    cells: &'a [Vec<QVector>],
}

#[derive(Deserialize)]
struct OwnedGridRepr {
    order: usize,
    provenance: String,
    cells: Vec<Vec<QVector>>,
}

impl Serialize for QlsGrid {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GridRepr {
            order: self.order,
            provenance: &self.provenance,
            cells: &self.cells,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QlsGrid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = OwnedGridRepr::deserialize(deserializer)?;
        if repr.order != repr.cells.len() {
            return Err(D::Error::custom(format!(
                "order {} does not match {} rows",
                repr.order,
                repr.cells.len()
            )));
        }
        QlsGrid::new(repr.provenance, repr.cells).map_err(D::Error::custom)
    }
}

pub fn to_json(grid: &QlsGrid) -> String {
    serde_json::to_string(grid).expect("grid serialization is infallible")
}

pub fn to_json_pretty(grid: &QlsGrid) -> String {
    serde_json::to_string_pretty(grid).expect("grid serialization is infallible")
}

pub fn from_json(text: &str) -> Result<QlsGrid> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::rat;

    fn cyclic(n: usize) -> QlsGrid {
        let symbols: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        QlsGrid::from_classical(format!("cyclic({n})"), &symbols).unwrap()
    }

    #[test]
    fn classical_lift_passes_with_cardinality_n() {
        for n in 1..=6 {
            let g = cyclic(n);
            assert!(g.is_qls(), "{}", g.verify());
            assert_eq!(cardinality(&g).unwrap().cardinality, n);
            assert_eq!(cardinality_pairwise(&g).unwrap(), n);
        }
    }

    #[test]
    fn repeated_cell_in_row_fails_at_that_pair() {
        let mut cells = cyclic(4).cells;
        cells[2][3] = cells[2][1].clone();
        let g = QlsGrid::new("broken", cells).unwrap();
        match &g.verify().violation {
            Some(Violation::NotOrthogonal { line: Line::Row(2), first: 1, second: 3, .. }) => {}
            other => panic!("unexpected report {other:?}"),
        }
        assert!(matches!(cardinality(&g), Err(Error::Unverified(_))));
    }

    #[test]
    fn non_unit_cell_reported_first() {
        let mut cells = cyclic(2).cells;
        cells[1][0] = cells[1][0].scaled(&RadExt::from_integer(2));
        let g = QlsGrid::new("scaled", cells).unwrap();
        assert!(matches!(g.verify().violation, Some(Violation::NotUnit { row: 1, col: 0, .. })));
    }

    #[test]
    fn column_violation_detected() {
        // rows are fine, columns repeat
        let rows = vec![vec![0, 1], vec![0, 1]];
        let g = QlsGrid::from_classical("bad columns", &rows).unwrap();
        assert!(matches!(
            g.verify().violation,
            Some(Violation::NotOrthogonal { line: Line::Column(0), first: 0, second: 1, .. })
        ));
    }

    #[test]
    fn shape_errors() {
        assert!(QlsGrid::new("empty", vec![]).is_err());
        assert!(QlsGrid::new("ragged", vec![vec![QVector::basis(2, 0)], vec![]]).is_err());
        assert!(QlsGrid::new("dim", vec![vec![QVector::basis(3, 0)]]).is_err());
        assert!(QlsGrid::from_classical("sym", &[vec![0, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn row_qlr_checks() {
        let one_by_two = RowQlr::new(vec![vec![QVector::basis(2, 0), QVector::basis(2, 0)]]).unwrap();
        assert!(!verify_row_qlr(&one_by_two).passed());
        let v = QVector::from_rationals([rat(3, 5), rat(4, 5)]).unwrap();
        let w = QVector::from_rationals([rat(-4, 5), rat(3, 5)]).unwrap();
        let twice = RowQlr::new(vec![vec![v.clone(), w.clone()], vec![-&v, w]]).unwrap();
        let report = verify_row_qlr(&twice);
        assert!(report.passed());
        assert_eq!(report.duplicate_rows, vec![(0, 1)]);
        assert_eq!(row_qlr_cardinality(&twice).unwrap(), 2);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let g = cyclic(3);
        let text = to_json(&g);
        assert!(text.starts_with(r#"{"order":3,"provenance":"cyclic(3)","cells":[["#));
        let back = from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(to_json(&back), text);
        assert_eq!(from_json(&to_json_pretty(&g)).unwrap(), g);
        assert!(from_json(r#"{"order":2,"provenance":"x","cells":[]}"#).is_err());
    }

    #[test]
    fn new_elements_against_baseline() {
        let g = cyclic(4);
        let elements = distinct_elements(&g).unwrap();
        assert_eq!(elements.len(), 4);
        assert_eq!(count_new_elements(&g, &elements).unwrap(), 0);
        assert_eq!(count_new_elements(&g, &ElementSet::new()).unwrap(), 4);
    }

    #[test]
    fn cross_checked_count() {
        assert_eq!(count_cardinality(&cyclic(5), CountMethod::CrossChecked).unwrap(), 5);
    }
}
