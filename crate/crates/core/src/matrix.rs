//! Dense matrices of arbitrary-precision rationals.

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{format_rat, parse_rat, Rat};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| crate::rational::rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn matmul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::MatrixRowMismatch {
                rows: other.rows,
                expected: self.cols,
            });
        }
        let mut out = RationalMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::MatrixColMismatch {
                cols: v.len(),
                expected: self.cols,
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn has_negative_entry(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j).is_negative() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Determinant by exact Gaussian elimination.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::MatrixNotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(pivot) = pivot else {
                return Ok(Rat::zero());
            };
            if pivot != col {
                for j in 0..n {
                    let a = m.get(col, j).clone();
                    let b = m.get(pivot, j).clone();
                    m.set(col, j, b);
                    m.set(pivot, j, a);
                }
                det = -det;
            }
            let p = m.get(col, col).clone();
            det *= &p;
            for r in (col + 1)..n {
                let factor = m.get(r, col) / &p;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(r, j) - &factor * m.get(col, j);
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let found = (pivot_row..self.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(found) = found else { continue };
            if found != pivot_row {
                for j in 0..self.cols {
                    let a = m.get(pivot_row, j).clone();
                    let b = m.get(found, j).clone();
                    m.set(pivot_row, j, b);
                    m.set(found, j, a);
                }
            }
            let p = m.get(pivot_row, col).clone();
            for r in (pivot_row + 1)..self.rows {
                let factor = m.get(r, col) / &p;
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = m.get(r, j) - &factor * m.get(pivot_row, j);
                    m.set(r, j, v);
                }
            }
            rank += 1;
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        rank
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        if self.rows != self.cols {
            return Err(Error::MatrixNotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = RationalMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(pivot) = pivot else {
                return Err(Error::SingularMatrix);
            };
            if pivot != col {
                for j in 0..n {
                    let (a, b) = (m.get(col, j).clone(), m.get(pivot, j).clone());
                    m.set(col, j, b);
                    m.set(pivot, j, a);
                    let (a, b) = (inv.get(col, j).clone(), inv.get(pivot, j).clone());
                    inv.set(col, j, b);
                    inv.set(pivot, j, a);
                }
            }
            let p = m.get(col, col).clone();
            for j in 0..n {
                let v = m.get(col, j) / &p;
                m.set(col, j, v);
                let v = inv.get(col, j) / &p;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = m.get(r, j) - &factor * m.get(col, j);
                    m.set(r, j, v);
                    let v = inv.get(r, j) - &factor * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Coefficients `c_0..c_n` of the monic characteristic polynomial
    /// `det(xI - M) = x^n + c_{n-1} x^{n-1} + ... + c_0`, by the
    /// Faddeev-LeVerrier recurrence over exact rationals.
    pub fn char_poly(&self) -> Result<Vec<Rat>> {
        if self.rows != self.cols {
            return Err(Error::MatrixNotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = RationalMatrix::zero(n, n);
        for k in 1..=n {
            // M_k = A (M_{k-1} + c_{n-k+1} I)
            let mut shifted = m.clone();
            for i in 0..n {
                let v = shifted.get(i, i) + &coeffs[n - k + 1];
                shifted.set(i, i, v);
            }
            m = self.matmul(&shifted)?;
            let mut trace = Rat::zero();
            for i in 0..n {
                trace += m.get(i, i);
            }
            coeffs[n - k] = -trace / Rat::from_integer(k.into());
        }
        Ok(coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: Vec<Vec<String>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = MatrixJson {
            rows: (0..self.rows)
                .map(|i| self.row(i).iter().map(format_rat).collect())
                .collect(),
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = MatrixJson::deserialize(deserializer)?;
        let width = json.rows.first().map_or(0, Vec::len);
        if json.rows.iter().any(|r| r.len() != width) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        let mut rows = Vec::with_capacity(json.rows.len());
        for row in json.rows {
            let mut out = Vec::with_capacity(width);
            for cell in row {
                out.push(parse_rat(&cell).map_err(D::Error::custom)?);
            }
            rows.push(out);
        }
        Ok(RationalMatrix::from_rows(rows))
    }
}
