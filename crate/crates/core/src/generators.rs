//! Exact constructors for the order-2 blocks, the order-4 squares built
//! from them, and the tensor-product construction.
//!
//! Two-qubit kets are indexed `|00> = 0, |01> = 1, |10> = 2, |11> = 3`.
//! Block layouts are 0-based: block `(i, j)` of a square assembled from
//! 2x2 blocks covers rows `2i..2i+2` and columns `2j..2j+2`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::algebraic::{format_rational, parse_rational, rat, rat_int, RadExt, Rational};
use crate::error::{Error, Result};
use crate::square::{distinct_elements, verify_row_qlr, ElementSet, QlsGrid, RowQlr};
use crate::vectors::{tensor, QVector};

/// A 2x2 array of 4-dimensional vectors.
pub type Block2 = [[QVector; 2]; 2];

pub fn ket2(index: usize) -> QVector {
    QVector::basis(4, index)
}

/// `1 / sqrt(k (1 + a^2))`.
fn normalizer(k: i64, a: &Rational) -> RadExt {
    RadExt::inv_sqrt_rational(&(rat_int(k) * (Rational::one() + a * a))).expect("positive")
}

fn combine(terms: &[(RadExt, &QVector)]) -> QVector {
    QVector::linear_combination(terms).expect("same dimension")
}

/// The order-2 square `((e1 + a e2, -a e1 + e2), (-a e1 + e2, e1 + a e2))`
/// scaled by `1/sqrt(1+a^2)`, over the span of orthonormal `e1, e2`.
pub fn rotation_block(e1: &QVector, e2: &QVector, a: &Rational) -> Block2 {
    let s = normalizer(1, a);
    let sa = &s * &RadExt::from_rational(a.clone());
    let p = combine(&[(s.clone(), e1), (sa.clone(), e2)]);
    let q = combine(&[(-&sa, e1), (s, e2)]);
    [[p.clone(), q.clone()], [q, p]]
}

pub fn make_block_a(a: &Rational) -> Block2 {
    rotation_block(&ket2(0), &ket2(1), a)
}

pub fn make_block_b(a: &Rational) -> Block2 {
    rotation_block(&ket2(2), &ket2(3), a)
}

/// The columns of `J1`, an orthonormal basis with `alpha_1 = |00>`.
pub fn make_alpha_basis() -> [QVector; 4] {
    let j1 = j_matrix(1).expect("J1");
    [j1.column(0), j1.column(1), j1.column(2), j1.column(3)]
}

pub fn make_block_c(a: &Rational) -> Block2 {
    let [a1, a2, _, _] = make_alpha_basis();
    rotation_block(&a1, &a2, a)
}

pub fn make_block_d(a: &Rational) -> Block2 {
    let [_, _, a3, a4] = make_alpha_basis();
    rotation_block(&a3, &a4, a)
}

/// Assembles `(top_left top_right; bottom_left bottom_right)` into an
/// order-4 square.
pub fn assemble(provenance: impl Into<String>, blocks: [[&Block2; 2]; 2]) -> QlsGrid {
    let mut cells = vec![Vec::new(); 4];
    for (bi, block_row) in blocks.iter().enumerate() {
        for block in block_row {
            for k in 0..2 {
                cells[2 * bi + k].extend(block[k].iter().cloned());
            }
        }
    }
    QlsGrid::new(provenance, cells).expect("4x4 of dimension-4 vectors")
}

/// A 4x4 real matrix with `M^T M = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoMatrix4 {
    rows: [[RadExt; 4]; 4],
}

fn matmul(a: &[[RadExt; 4]; 4], b: &[[RadExt; 4]; 4]) -> [[RadExt; 4]; 4] {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| (0..4).map(|k| &a[r][k] * &b[k][c]).sum())
    })
}

fn transpose(a: &[[RadExt; 4]; 4]) -> [[RadExt; 4]; 4] {
    std::array::from_fn(|r| std::array::from_fn(|c| a[c][r].clone()))
}

fn is_identity(a: &[[RadExt; 4]; 4]) -> bool {
    (0..4).all(|r| {
        (0..4).all(|c| {
            if r == c {
                a[r][c] == RadExt::one()
            } else {
                a[r][c].is_zero()
            }
        })
    })
}

/// Parses four whitespace-separated rows of rationals, e.g. `"0 1/3 -2/3 2/3"`.
pub fn parse_rational_rows(rows: [&str; 4]) -> Result<[[RadExt; 4]; 4]> {
    let mut out: [[RadExt; 4]; 4] = Default::default();
    for (r, text) in rows.iter().enumerate() {
        let entries: Vec<&str> = text.split_whitespace().collect();
        if entries.len() != 4 {
            return Err(Error::Shape(format!("matrix row `{text}` does not have 4 entries")));
        }
        for (c, e) in entries.iter().enumerate() {
            out[r][c] = RadExt::from_rational(parse_rational(e)?);
        }
    }
    Ok(out)
}

impl OrthoMatrix4 {
    pub fn new(rows: [[RadExt; 4]; 4]) -> Result<Self> {
        if !Self::is_orthonormal(&rows) {
            return Err(Error::Parameter("matrix is not orthonormal".into()));
        }
        Ok(Self { rows })
    }

    pub fn from_rational_rows(rows: [&str; 4]) -> Result<Self> {
        Self::new(parse_rational_rows(rows)?)
    }

    /// `M^T M = I`, checked exactly.
    pub fn is_orthonormal(rows: &[[RadExt; 4]; 4]) -> bool {
        is_identity(&matmul(&transpose(rows), rows))
    }

    pub fn entry(&self, row: usize, col: usize) -> &RadExt {
        &self.rows[row][col]
    }

    pub fn rows(&self) -> &[[RadExt; 4]; 4] {
        &self.rows
    }

    pub fn column(&self, col: usize) -> QVector {
        QVector::new(self.rows.iter().map(|row| row[col].clone()).collect()).expect("4 entries")
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: transpose(&self.rows),
        }
    }

    /// Product of orthonormal matrices, orthonormal by closure.
    pub fn mul(&self, other: &OrthoMatrix4) -> OrthoMatrix4 {
        OrthoMatrix4 {
            rows: matmul(&self.rows, &other.rows),
        }
    }
}

pub fn j_matrix(k: u8) -> Result<OrthoMatrix4> {
    let rows = match k {
        1 => ["1 0 0 0", "0 1/3 -2/3 2/3", "0 2/3 -1/3 -2/3", "0 2/3 2/3 1/3"],
        2 => ["1 0 0 0", "0 1 0 0", "0 0 3/5 -4/5", "0 0 4/5 3/5"],
        3 => ["1 0 0 0", "0 3/5 -4/5 0", "0 4/5 3/5 0", "0 0 0 1"],
        4 => ["1 0 0 0", "0 1 0 0", "0 0 -4/5 3/5", "0 0 3/5 4/5"],
        _ => return Err(Error::Parameter(format!("J index {k} not in 1..=4"))),
    };
    OrthoMatrix4::from_rational_rows(rows)
}

/// The matrices whose columns form the rows of `W0`.
pub fn x_matrix(i: u8) -> Result<OrthoMatrix4> {
    let rows = match i {
        1 => ["0 0 -12/13 5/13", "0 0 5/13 12/13", "0 1 0 0", "1 0 0 0"],
        2 => [
            "-4/5 0 3/13 -36/65",
            "0 -4/5 36/65 3/13",
            "3/5 0 4/13 -48/65",
            "0 3/5 48/65 4/13",
        ],
        3 => ["0 1 0 0", "1 0 0 0", "0 0 -12/13 5/13", "0 0 5/13 12/13"],
        4 => [
            "3/5 0 -4/13 48/65",
            "0 3/5 -48/65 -4/13",
            "4/5 0 3/13 -36/65",
            "0 4/5 36/65 3/13",
        ],
        _ => return Err(Error::Parameter(format!("X index {i} not in 1..=4"))),
    };
    OrthoMatrix4::from_rational_rows(rows)
}

/// `X1 J_k X1^T X_i` (`X1^T = X1^{-1}`), the matrix whose columns form
/// row `i` of `W_k`.
pub fn wk_matrix(k: u8, i: u8) -> Result<OrthoMatrix4> {
    let x1 = x_matrix(1)?;
    Ok(x1.mul(&j_matrix(k)?).mul(&x1.transpose()).mul(&x_matrix(i)?))
}

/// The matrices whose columns form the rows of `W(a,b)`.
pub fn y_matrix(i: u8, a: &Rational, b: &Rational) -> Result<OrthoMatrix4> {
    let ra = normalizer(1, a);
    let rb = normalizer(1, b);
    let sa = normalizer(2, a);
    let sb = normalizer(2, b);
    let av = RadExt::from_rational(a.clone());
    let bv = RadExt::from_rational(b.clone());
    let (ra_a, rb_b, sa_a, sb_b) = (&ra * &av, &rb * &bv, &sa * &av, &sb * &bv);
    let z = RadExt::zero;
    let rows: [[RadExt; 4]; 4] = match i {
        1 => [
            [ra.clone(), -&ra_a, z(), z()],
            [ra_a, ra, z(), z()],
            [z(), z(), rb.clone(), -&rb_b],
            [z(), z(), rb_b, rb],
        ],
        2 => [
            [z(), z(), rb.clone(), -&rb_b],
            [z(), z(), rb_b, rb],
            [ra.clone(), -&ra_a, z(), z()],
            [ra_a, ra, z(), z()],
        ],
        3 => [
            [-&sa_a, sa.clone(), sb_b.clone(), -&sb],
            [sa.clone(), sa_a.clone(), -&sb, -&sb_b],
            [-&sa_a, sa.clone(), -&sb_b, sb.clone()],
            [sa, sa_a, sb, sb_b],
        ],
        4 => [
            [sa_a.clone(), -&sa, -&sb_b, sb.clone()],
            [-&sa, -&sa_a, sb.clone(), sb_b.clone()],
            [-&sa_a, sa.clone(), -&sb_b, sb.clone()],
            [sa, sa_a, sb, sb_b],
        ],
        _ => return Err(Error::Parameter(format!("Y index {i} not in 1..=4"))),
    };
    OrthoMatrix4::new(rows)
}

/// Order-4 square whose row `i` lists the columns of `matrices[i]`.
pub fn grid_from_matrices(provenance: impl Into<String>, matrices: &[OrthoMatrix4; 4]) -> QlsGrid {
    let cells = matrices
        .iter()
        .map(|m| (0..4).map(|c| m.column(c)).collect())
        .collect();
    QlsGrid::new(provenance, cells).expect("4x4 of dimension-4 vectors")
}

/// The rows `(cos, sin)`-style pair `((1, a), (-a, 1)) / sqrt(1+a^2)` in
/// dimension 2.
pub fn rotation_pair(a: &Rational) -> [QVector; 2] {
    let s = normalizer(1, a);
    let sa = &s * &RadExt::from_rational(a.clone());
    [
        QVector::new(vec![s.clone(), sa.clone()]).expect("2 entries"),
        QVector::new(vec![-&sa, s]).expect("2 entries"),
    ]
}

/// The 2x2 row-quantum Latin rectangle with rows `rotation_pair(a)` and
/// `rotation_pair(b)`.
pub fn make_v(a: &Rational, b: &Rational) -> Result<RowQlr> {
    if a == b {
        return Err(Error::Parameter(format!(
            "V(a,b) needs a != b, got a = b = {}",
            format_rational(a)
        )));
    }
    RowQlr::new(vec![rotation_pair(a).to_vec(), rotation_pair(b).to_vec()])
}

/// Combines an `m x n` rectangle `U` (cells of dimension `n`) with an
/// `n x m` rectangle `V` (dimension `m`) into a square of order `mn`.
///
/// Block `(i, j)` has size `n x m`; its cell `(k, l)` sits at global row
/// `i*n + k`, column `j*m + l` and equals
/// `u[i][(j+k) mod n] (x) v[j][(i+l) mod m]`.
pub fn product_construct(u: &RowQlr, v: &RowQlr) -> Result<QlsGrid> {
    let (m, n) = (u.rows(), u.cols());
    if v.rows() != n || v.cols() != m {
        return Err(Error::Shape(format!(
            "U is {m}x{n}, so V must be {n}x{m}, got {}x{}",
            v.rows(),
            v.cols()
        )));
    }
    for (name, rect) in [("U", u), ("V", v)] {
        if let Some(violation) = verify_row_qlr(rect).violation {
            return Err(Error::Unverified(format!("{name}: {violation}")));
        }
    }
    let order = m * n;
    let mut cells = vec![Vec::with_capacity(order); order];
    for i in 0..m {
        for k in 0..n {
            let row = &mut cells[i * n + k];
            for j in 0..n {
                for l in 0..m {
                    row.push(tensor(u.cell(i, (j + k) % n), v.cell(j, (i + l) % m)));
                }
            }
        }
    }
    QlsGrid::new("product", cells)
}

/// Identifies every named square or block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorId {
    A(Rational),
    B(Rational),
    C(Rational),
    D(Rational),
    H(u8),
    Hprime(u8),
    W(Rational, Rational),
    W0,
    Wk(u8),
}

impl GeneratorId {
    pub fn w_pair(a: i64, b: i64) -> Self {
        GeneratorId::W(rat_int(a), rat_int(b))
    }

    /// Whether this names an order-4 square (as opposed to a 2x2 block).
    pub fn is_square(&self) -> bool {
        !matches!(
            self,
            GeneratorId::A(_) | GeneratorId::B(_) | GeneratorId::C(_) | GeneratorId::D(_)
        )
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::Generator {
            id: self.to_string(),
            reason: reason.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GeneratorId::H(l) if *l > 8 => Err(self.invalid("H index must be in 0..=8")),
            GeneratorId::Hprime(l) if ![2, 4, 6, 8].contains(l) => {
                Err(self.invalid("Hprime index must be one of 2, 4, 6, 8"))
            }
            GeneratorId::Wk(k) if !(1..=4).contains(k) => Err(self.invalid("Wk index must be in 1..=4")),
            GeneratorId::W(a, b) if a == b => Err(self.invalid("W(a,b) needs a != b")),
            _ => Ok(()),
        }
    }

    pub fn block(&self) -> Result<Block2> {
        match self {
            GeneratorId::A(a) => Ok(make_block_a(a)),
            GeneratorId::B(a) => Ok(make_block_b(a)),
            GeneratorId::C(a) => Ok(make_block_c(a)),
            GeneratorId::D(a) => Ok(make_block_d(a)),
            _ => Err(self.invalid("not a 2x2 block")),
        }
    }

    /// Builds the named order-4 square, with this id as provenance.
    pub fn build(&self) -> Result<QlsGrid> {
        self.validate()?;
        let grid = match self {
            GeneratorId::H(l) => make_h(*l)?,
            GeneratorId::Hprime(l) => make_hprime(*l)?,
            GeneratorId::W(a, b) => make_w(a, b)?,
            GeneratorId::W0 => make_w0(),
            GeneratorId::Wk(k) => make_wk(*k)?,
            _ => return Err(self.invalid("a 2x2 block is not a quantum Latin square of order 4")),
        };
        Ok(grid.with_provenance(self.to_string()))
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = format_rational;
        match self {
            GeneratorId::A(a) => write!(f, "A({})", q(a)),
            GeneratorId::B(a) => write!(f, "B({})", q(a)),
            GeneratorId::C(a) => write!(f, "C({})", q(a)),
            GeneratorId::D(a) => write!(f, "D({})", q(a)),
            GeneratorId::H(l) => write!(f, "H({l})"),
            GeneratorId::Hprime(l) => write!(f, "Hprime({l})"),
            GeneratorId::W(a, b) => write!(f, "W({},{})", q(a), q(b)),
            GeneratorId::W0 => f.write_str("W0"),
            GeneratorId::Wk(k) => write!(f, "Wk({k})"),
        }
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |reason: &str| Error::Generator {
            id: s.to_string(),
            reason: reason.to_string(),
        };
        if text == "W0" {
            return Ok(GeneratorId::W0);
        }
        let (name, rest) = text
            .split_once('(')
            .ok_or_else(|| bad("expected NAME(args), e.g. H(5) or W(5,6)"))?;
        let args = rest.strip_suffix(')').ok_or_else(|| bad("missing closing parenthesis"))?;
        let args: Vec<&str> = args.split(',').collect();
        let one_rational = || -> Result<Rational> {
            match args.as_slice() {
                [x] => parse_rational(x),
                _ => Err(bad("expected one argument")),
            }
        };
        let one_index = || -> Result<u8> {
            match args.as_slice() {
                [x] => x.parse::<u8>().map_err(|_| bad("index must be a small non-negative integer")),
                _ => Err(bad("expected one argument")),
            }
        };
        let id = match name {
            "A" => GeneratorId::A(one_rational()?),
            "B" => GeneratorId::B(one_rational()?),
            "C" => GeneratorId::C(one_rational()?),
            "D" => GeneratorId::D(one_rational()?),
            "H" => GeneratorId::H(one_index()?),
            "Hprime" => GeneratorId::Hprime(one_index()?),
            "Wk" => GeneratorId::Wk(one_index()?),
            "W" => match args.as_slice() {
                [a, b] => GeneratorId::W(parse_rational(a)?, parse_rational(b)?),
                _ => return Err(bad("W takes two arguments")),
            },
            _ => return Err(bad("unknown generator name")),
        };
        id.validate()?;
        Ok(id)
    }
}

/// The order-4 squares `H_0 .. H_8`.
pub fn make_h(l: u8) -> Result<QlsGrid> {
    let a = |x: i64| make_block_a(&rat_int(x));
    let b = |x: i64| make_block_b(&rat_int(x));
    let c = |x: i64| make_block_c(&rat_int(x));
    let d = |x: i64| make_block_d(&rat_int(x));
    let [p, q, r, s] = match l {
        0 => [a(0), b(0), b(0), a(0)],
        1 => [a(0), b(0), b(1), a(1)],
        2 => [a(0), b(0), b(0), a(2)],
        3 => [c(0), d(0), d(0), c(0)],
        4 => [a(0), b(0), b(2), a(2)],
        5 => [c(0), d(0), d(0), c(1)],
        6 => [a(0), b(2), b(3), a(2)],
        7 => [c(0), d(3), d(4), c(1)],
        8 => [a(2), b(2), b(3), a(3)],
        _ => return Err(Error::Parameter(format!("H index {l} not in 0..=8"))),
    };
    Ok(assemble(format!("H({l})"), [[&p, &q], [&r, &s]]))
}

/// The order-4 squares built from `A`/`B` blocks that add `l` new
/// elements to `W0`.
pub fn make_hprime(l: u8) -> Result<QlsGrid> {
    let a = |x: i64| make_block_a(&rat_int(x));
    let b = |x: i64| make_block_b(&rat_int(x));
    let [p, q, r, s] = match l {
        2 => [b(0), a(0), a(1), b(0)],
        4 => [b(0), a(0), a(1), b(1)],
        6 => [b(1), a(2), a(1), b(0)],
        8 => [b(1), a(1), a(2), b(2)],
        _ => return Err(Error::Parameter(format!("Hprime index {l} not one of 2, 4, 6, 8"))),
    };
    Ok(assemble(format!("Hprime({l})"), [[&p, &q], [&r, &s]]))
}

/// `W(a,b)`: the product construction of `V(0,1)` with `V(a,b)`.
pub fn make_w(a: &Rational, b: &Rational) -> Result<QlsGrid> {
    let u = make_v(&Rational::zero(), &Rational::one())?;
    let v = make_v(a, b)?;
    Ok(product_construct(&u, &v)?.with_provenance(format!("W({},{})", format_rational(a), format_rational(b))))
}

/// `W(a,b)` read off the explicit `Y_{i,a,b}` matrices; kept as an
/// independent check on [`make_w`].
pub fn make_w_from_y(a: &Rational, b: &Rational) -> Result<QlsGrid> {
    if a == b {
        return Err(Error::Parameter("W(a,b) needs a != b".into()));
    }
    let ys = [
        y_matrix(1, a, b)?,
        y_matrix(2, a, b)?,
        y_matrix(3, a, b)?,
        y_matrix(4, a, b)?,
    ];
    Ok(grid_from_matrices(
        format!("W({},{}) via Y", format_rational(a), format_rational(b)),
        &ys,
    ))
}

/// `W0`, with row `i` the columns of `X_i`.
pub fn make_w0() -> QlsGrid {
    let xs = [1, 2, 3, 4].map(|i| x_matrix(i).expect("X matrices are orthonormal"));
    grid_from_matrices("W0", &xs)
}

/// The product construction of `V(0,4/3)` with `V(0,12/5)`. Same element
/// set as [`make_w0`], different cell layout.
pub fn make_w0_product() -> QlsGrid {
    let u = make_v(&Rational::zero(), &rat(4, 3)).expect("0 != 4/3");
    let v = make_v(&Rational::zero(), &rat(12, 5)).expect("0 != 12/5");
    product_construct(&u, &v)
        .expect("V rectangles are valid")
        .with_provenance("W0 via product")
}

pub fn make_wk(k: u8) -> Result<QlsGrid> {
    let ms = [
        wk_matrix(k, 1)?,
        wk_matrix(k, 2)?,
        wk_matrix(k, 3)?,
        wk_matrix(k, 4)?,
    ];
    Ok(grid_from_matrices(format!("Wk({k})"), &ms))
}

/// A generated square together with its phase classes.
#[derive(Debug)]
pub struct Generated {
    pub id: GeneratorId,
    pub grid: QlsGrid,
    pub elements: ElementSet,
}

fn cache() -> &'static Mutex<HashMap<GeneratorId, Arc<Generated>>> {
    static CACHE: OnceLock<Mutex<HashMap<GeneratorId, Arc<Generated>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Builds (once per process) and verifies the named square.
pub fn generated(id: &GeneratorId) -> Result<Arc<Generated>> {
    if let Some(hit) = cache().lock().expect("cache lock").get(id) {
        return Ok(Arc::clone(hit));
    }
    let grid = id.build()?;
    let elements = distinct_elements(&grid)?;
    let entry = Arc::new(Generated {
        id: id.clone(),
        grid,
        elements,
    });
    let mut map = cache().lock().expect("cache lock");
    Ok(Arc::clone(map.entry(id.clone()).or_insert(entry)))
}

/// Phase classes of a 2x2 block.
pub fn block_elements(block: &Block2) -> ElementSet {
    block
        .iter()
        .flatten()
        .map(|v| v.canonicalize().expect("unit"))
        .collect()
}
