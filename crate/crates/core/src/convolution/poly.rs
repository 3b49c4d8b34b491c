use std::collections::BTreeMap;

use super::ntt;
use crate::error::{Error, Result};

/// Sparse polynomial in `x, y, z` with non-negative integer coefficients.
pub type Poly3 = BTreeMap<(u32, u32, u32), u64>;

/// Kronecker layout for factors with `deg_x ≤ 1`, `deg_y ≤ dy`.
///
/// `x` is innermost with stride 1, then `y` with stride 3, then `z` with
/// stride `3·(2·dy + 1)`. The strides are sized for the product, whose
/// x-degree reaches 2 and y-degree reaches `2·dy`, so packing the factors
/// with the same layout never lets a product term carry into a neighbour.
#[derive(Clone, Copy, Debug)]
pub struct Packing {
    pub y_span: usize,
}

impl Packing {
    pub fn new(dy: usize) -> Self {
        Packing { y_span: 2 * dy + 1 }
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        x + 3 * (y + self.y_span * z)
    }

    pub fn z_stride(&self) -> usize {
        3 * self.y_span
    }

    pub fn unpack(&self, idx: usize) -> (usize, usize, usize) {
        (idx % 3, (idx / 3) % self.y_span, idx / self.z_stride())
    }
}

fn pack(p: &Poly3, layout: &Packing, dy: u32, dz: u32) -> Result<Vec<u32>> {
    let mut out = vec![0u32; layout.index(0, 0, dz as usize + 1)];
    for (&(x, y, z), &c) in p {
        if x > 1 || y > dy || z > dz {
            return Err(Error::OutOfRange { value: x.max(y).max(z) as i64, bound: dy.max(dz) as i64 });
        }
        if c > 0 {
            out[layout.index(x as usize, y as usize, z as usize)] =
                u32::try_from(c).map_err(|_| Error::OutOfRange { value: c as i64, bound: u32::MAX as i64 })?;
        }
    }
    Ok(out)
}

/// Exact product of two sparse three-variable polynomials.
///
/// Degrees must satisfy `x ≤ 1`, `y ≤ dy`, `z ≤ dz`.
pub fn poly_mult_3var(p: &Poly3, q: &Poly3, dy: u32, dz: u32) -> Result<Poly3> {
    let layout = Packing::new(dy as usize);
    let a = pack(p, &layout, dy, dz)?;
    let b = pack(q, &layout, dy, dz)?;
    let sum_a: u64 = p.values().sum();
    let max_b = q.values().copied().max().unwrap_or(0);
    let prod = ntt::multiply(&a, &b, sum_a.saturating_mul(max_b));
    let mut out = Poly3::new();
    for (idx, c) in prod.into_iter().enumerate() {
        if c != 0 {
            let (x, y, z) = layout.unpack(idx);
            out.insert((x as u32, y as u32, z as u32), c);
        }
    }
    Ok(out)
}
