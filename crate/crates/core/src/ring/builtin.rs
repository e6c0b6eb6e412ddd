use std::fmt;
use std::str::FromStr;

use super::{FiniteRing, RingError};

/// Named ring constructors.
///
/// Matrix families are over `Z_m`; `m` need not be prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `Z_n`.
    Zn(u64),
    /// Zero multiplication on `Z_{d_1} x ... x Z_{d_k}`.
    ZeroRing(Vec<u64>),
    /// All `n x n` matrices, basis `E_ab` in row-major order.
    MatFull {
        n: usize,
        m: u64,
    },
    /// `[[a, b], [0, c]]`, basis `E11, E12, E22`.
    MatUpperTri(u64),
    /// `[[x, y], [0, 0]]`, basis `E11, E12`.
    MatRow(u64),
    /// Upper-triangular matrices on the basis `I, E12, E22`, so that the
    /// scalar matrices are the subring generated by `e1`.
    MatScalarAmbient(u64),
    DirectSum(Vec<Builtin>),
}

impl Builtin {
    pub fn build(&self) -> Result<FiniteRing, RingError> {
        let (orders, table) = self.structure()?;
        FiniteRing::from_structure(orders, table, Some(self.to_string()))
    }

    fn structure(&self) -> Result<(Vec<u64>, Vec<Vec<Vec<u64>>>), RingError> {
        let modulus = |m: u64| {
            if m >= 2 {
                Ok(m)
            } else {
                Err(RingError::InvalidParameter(format!(
                    "modulus must be at least 2, got {m}"
                )))
            }
        };
        Ok(match self {
            Builtin::Zn(0) => {
                return Err(RingError::InvalidParameter(
                    "zn order must be positive".into(),
                ))
            }
            Builtin::Zn(1) => (Vec::new(), Vec::new()),
            &Builtin::Zn(n) => (vec![n], vec![vec![vec![1]]]),
            Builtin::ZeroRing(orders) => {
                if let Some(&d) = orders.iter().find(|&&d| d < 2) {
                    return Err(RingError::InvalidParameter(format!(
                        "zero_ring factor orders must be at least 2, got {d}"
                    )));
                }
                let k = orders.len();
                (orders.clone(), vec![vec![vec![0; k]; k]; k])
            }
            &Builtin::MatFull { n, m } => {
                let m = modulus(m)?;
                if n == 0 {
                    return Err(RingError::InvalidParameter(
                        "matrix size must be positive".into(),
                    ));
                }
                let k = n * n;
                let mut table = vec![vec![vec![0; k]; k]; k];
                for a in 0..n {
                    for b in 0..n {
                        for d in 0..n {
                            // E_ab E_bd = E_ad
                            table[a * n + b][b * n + d][a * n + d] = 1;
                        }
                    }
                }
                (vec![m; k], table)
            }
            &Builtin::MatUpperTri(m) => {
                let m = modulus(m)?;
                let (e11, e12, e22) = (vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]);
                let z = vec![0, 0, 0];
                let table = vec![
                    vec![e11.clone(), e12.clone(), z.clone()],
                    vec![z.clone(), z.clone(), e12.clone()],
                    vec![z.clone(), z.clone(), e22],
                ];
                (vec![m; 3], table)
            }
            &Builtin::MatRow(m) => {
                let m = modulus(m)?;
                let table = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 0]]];
                (vec![m; 2], table)
            }
            &Builtin::MatScalarAmbient(m) => {
                let m = modulus(m)?;
                let (id, e12, e22) = (vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]);
                let z = vec![0, 0, 0];
                let table = vec![
                    vec![id.clone(), e12.clone(), e22.clone()],
                    vec![e12.clone(), z.clone(), e12.clone()],
                    vec![e22.clone(), z, e22],
                ];
                (vec![m; 3], table)
            }
            Builtin::DirectSum(parts) => {
                if parts.is_empty() {
                    return Err(RingError::InvalidParameter(
                        "direct_sum needs at least one summand".into(),
                    ));
                }
                let pieces = parts
                    .iter()
                    .map(|p| p.structure())
                    .collect::<Result<Vec<_>, _>>()?;
                let k: usize = pieces.iter().map(|(o, _)| o.len()).sum();
                let mut orders = Vec::with_capacity(k);
                let mut table = vec![vec![vec![0; k]; k]; k];
                let mut offset = 0;
                for (o, t) in pieces {
                    let r = o.len();
                    for i in 0..r {
                        for j in 0..r {
                            for (c, &v) in t[i][j].iter().enumerate() {
                                table[offset + i][offset + j][offset + c] = v;
                            }
                        }
                    }
                    orders.extend(o);
                    offset += r;
                }
                (orders, table)
            }
        })
    }

    /// Number of elements of the ring, without building it.
    pub fn order(&self) -> u64 {
        match self {
            Builtin::Zn(n) => *n,
            Builtin::ZeroRing(orders) => orders.iter().product(),
            Builtin::MatFull { n, m } => m.pow((n * n) as u32),
            Builtin::MatUpperTri(m) | Builtin::MatScalarAmbient(m) => m.pow(3),
            Builtin::MatRow(m) => m.pow(2),
            Builtin::DirectSum(parts) => parts.iter().map(Builtin::order).product(),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            Builtin::Zn(_) => "zn",
            Builtin::ZeroRing(_) => "zero_ring",
            Builtin::MatFull { .. } => "mat_full",
            Builtin::MatUpperTri(_) => "mat_upper_tri",
            Builtin::MatRow(_) => "mat_row",
            Builtin::MatScalarAmbient(_) => "mat_scalar_subring_ambient",
            Builtin::DirectSum(_) => "direct_sum",
        }
    }

    /// Builds a constructor from a family name and its textual parameters.
    pub fn from_parts(name: &str, params: &[&str]) -> Result<Self, RingError> {
        let int = |s: &str| {
            s.trim().parse::<u64>().map_err(|_| {
                RingError::InvalidParameter(format!("`{s}` is not a non-negative integer"))
            })
        };
        let exactly = |n: usize| {
            if params.len() == n {
                Ok(())
            } else {
                Err(RingError::InvalidParameter(format!(
                    "{name} takes {n} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        match name {
            "zn" => {
                exactly(1)?;
                Ok(Builtin::Zn(int(params[0])?))
            }
            "zero_ring" => Ok(Builtin::ZeroRing(
                params.iter().map(|p| int(p)).collect::<Result<_, _>>()?,
            )),
            "mat_full" => {
                exactly(2)?;
                Ok(Builtin::MatFull {
                    n: int(params[0])? as usize,
                    m: int(params[1])?,
                })
            }
            "mat_upper_tri" => {
                exactly(1)?;
                Ok(Builtin::MatUpperTri(int(params[0])?))
            }
            "mat_row" => {
                exactly(1)?;
                Ok(Builtin::MatRow(int(params[0])?))
            }
            "mat_scalar_subring_ambient" => {
                exactly(1)?;
                Ok(Builtin::MatScalarAmbient(int(params[0])?))
            }
            "direct_sum" => Ok(Builtin::DirectSum(
                params.iter().map(|p| p.parse()).collect::<Result<_, _>>()?,
            )),
            other => Err(RingError::UnknownBuiltin(other.to_string())),
        }
    }
}

/// Builds the named ring, e.g. `builtin("mat_row", &["2"])`.
pub fn builtin(name: &str, params: &[&str]) -> Result<FiniteRing, RingError> {
    Builtin::from_parts(name, params)?.build()
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            Builtin::Zn(n) => write!(f, "zn({n})"),
            Builtin::ZeroRing(o) => write!(f, "zero_ring({})", join(o)),
            Builtin::MatFull { n, m } => write!(f, "mat_full({n},{m})"),
            Builtin::MatUpperTri(m) => write!(f, "mat_upper_tri({m})"),
            Builtin::MatRow(m) => write!(f, "mat_row({m})"),
            Builtin::MatScalarAmbient(m) => write!(f, "mat_scalar_subring_ambient({m})"),
            Builtin::DirectSum(parts) => {
                let inner: Vec<String> = parts.iter().map(Builtin::to_string).collect();
                write!(f, "direct_sum({})", inner.join(","))
            }
        }
    }
}

/// Parses `name(arg, ...)`; `direct_sum` arguments are themselves constructors.
impl FromStr for Builtin {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| {
            RingError::InvalidParameter(format!("expected `name(args)`, got `{s}`"))
        })?;
        if !s.ends_with(')') {
            return Err(RingError::InvalidParameter(format!(
                "unbalanced parentheses in `{s}`"
            )));
        }
        let name = s[..open].trim();
        let inner = &s[open + 1..s.len() - 1];
        let mut args = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    args.push(&inner[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
            if depth < 0 {
                return Err(RingError::InvalidParameter(format!(
                    "unbalanced parentheses in `{s}`"
                )));
            }
        }
        if depth != 0 {
            return Err(RingError::InvalidParameter(format!(
                "unbalanced parentheses in `{s}`"
            )));
        }
        if !inner.trim().is_empty() {
            args.push(&inner[start..]);
        }
        let args: Vec<&str> = args.into_iter().map(str::trim).collect();
        Builtin::from_parts(name, &args)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Matrix = Vec<Vec<u64>>;

    fn matmul(a: &Matrix, b: &Matrix, m: u64) -> Matrix {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|t| a[i][t] * b[t][j]).sum::<u64>() % m)
                    .collect()
            })
            .collect()
    }

    /// Realizes ring elements as explicit matrices to compare against the structure constants.
    fn check_against_matrices(ring: &FiniteRing, m: u64, realize: impl Fn(&[u64]) -> Matrix) {
        for x in ring.elements() {
            for y in ring.elements() {
                let (mx, my) = (
                    realize(&ring.additive().coords(x)),
                    realize(&ring.additive().coords(y)),
                );
                assert_eq!(
                    realize(&ring.additive().coords(ring.mul(x, y))),
                    matmul(&mx, &my, m)
                );
            }
        }
    }

    #[test]
    fn orders_of_named_rings() {
        assert_eq!(builtin("mat_row", &["2"]).unwrap().order(), 4);
        assert_eq!(builtin("mat_upper_tri", &["3"]).unwrap().order(), 27);
        assert_eq!(builtin("mat_full", &["2", "2"]).unwrap().order(), 16);
        assert_eq!(builtin("zn", &["1"]).unwrap().order(), 1);
        assert_eq!(builtin("zero_ring", &["2", "4"]).unwrap().order(), 8);
        assert_eq!(
            builtin("direct_sum", &["mat_row(2)", "zn(3)"])
                .unwrap()
                .order(),
            12
        );
    }

    #[test]
    fn zn_is_commutative() {
        assert!(builtin("zn", &["12"]).unwrap().is_commutative());
    }

    #[test]
    fn matrix_families_match_matrix_multiplication() {
        for m in [2, 3, 4] {
            let row = Builtin::MatRow(m).build().unwrap();
            check_against_matrices(&row, m, |c| vec![vec![c[0], c[1]], vec![0, 0]]);
            let upper = Builtin::MatUpperTri(m).build().unwrap();
            check_against_matrices(&upper, m, |c| vec![vec![c[0], c[1]], vec![0, c[2]]]);
            let scalar = Builtin::MatScalarAmbient(m).build().unwrap();
            check_against_matrices(&scalar, m, |c| {
                vec![vec![c[0], c[1]], vec![0, (c[0] + c[2]) % m]]
            });
        }
        let full = Builtin::MatFull { n: 2, m: 2 }.build().unwrap();
        check_against_matrices(&full, 2, |c| vec![vec![c[0], c[1]], vec![c[2], c[3]]]);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in [
            "zn(8)",
            "zero_ring(2,2)",
            "mat_full(2,2)",
            "mat_row(5)",
            "direct_sum(mat_row(2),direct_sum(zn(2),zn(3)))",
            "mat_scalar_subring_ambient(3)",
        ] {
            let b: Builtin = text.parse().unwrap();
            assert_eq!(b.to_string(), text);
        }
        let spaced: Builtin = " direct_sum( mat_row(2) , zn(2) ) ".parse().unwrap();
        assert_eq!(spaced.to_string(), "direct_sum(mat_row(2),zn(2))");
    }

    #[test]
    fn invalid_constructors_are_rejected() {
        assert!(matches!(
            builtin("zn", &["0"]),
            Err(RingError::InvalidParameter(_))
        ));
        assert!(matches!(
            builtin("mat_row", &["1"]),
            Err(RingError::InvalidParameter(_))
        ));
        assert!(matches!(
            builtin("nope", &["1"]),
            Err(RingError::UnknownBuiltin(_))
        ));
        assert!(matches!(
            builtin("zn", &["x"]),
            Err(RingError::InvalidParameter(_))
        ));
        assert!(matches!(
            builtin("zn", &["2", "3"]),
            Err(RingError::InvalidParameter(_))
        ));
        assert!("zn(2".parse::<Builtin>().is_err());
        assert!("zn".parse::<Builtin>().is_err());
    }
}
