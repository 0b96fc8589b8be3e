//! Finite grade algebras: a totally ordered set of rational truth degrees
//! together with a finite t-norm that combines them.
//!
//! A [`GradeScale`] owns a strictly ascending list of exact rational levels in
//! `[0, 1]` (always containing `0` and `1`) and a combination table. Grades are
//! referenced by index ([`Grade`]) everywhere else in the crate, so all
//! arithmetic is integer arithmetic on table lookups; the rational levels exist
//! for input, output, and ordering only. No floating point is involved.

use num_rational::Ratio;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// An exact rational truth degree, e.g. `1/2`.
pub type Level = Ratio<i64>;

/// Index of a level within a [`GradeScale`]; `Grade(0)` is the bottom degree
/// `0` and the largest index is the top degree `1`. Ordering on indices
/// coincides with ordering on the underlying levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(pub u8);

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// How a scale's combination operation was specified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleKind {
    /// Minimum of the two grades.
    Godel,
    /// `max(0, a + b - 1)` on evenly spaced levels.
    Lukasiewicz,
    /// An explicit combination table.
    Table,
}

/// Errors raised while building or querying a [`GradeScale`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScaleError {
    #[error("a grade scale needs at least the two levels 0 and 1")]
    TooFewLevels,
    #[error("a grade scale supports at most {max} levels, got {got}")]
    TooManyLevels { max: usize, got: usize },
    #[error("levels must be strictly ascending: level {index} is not above its predecessor")]
    NotAscending { index: usize },
    #[error("level {level} lies outside [0, 1]")]
    OutOfRange { level: Level },
    #[error("the smallest level must be 0 and the largest must be 1")]
    MissingBounds,
    #[error("combination table must have {expected} entries, got {got}")]
    BadTableSize { expected: usize, got: usize },
    #[error("combination table entry {entry} at row {row}, column {col} is not a level index")]
    TableEntryOutOfRange { row: usize, col: usize, entry: usize },
    #[error("combination is not commutative at ({a}, {b})")]
    NotCommutative { a: usize, b: usize },
    #[error("combination is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("the top grade must be neutral: combine({a}, top) != {a}")]
    TopNotNeutral { a: usize },
    #[error("combination is not monotone: combine({a}, {b}) > combine({a2}, {b}) although {a} <= {a2}")]
    NotMonotone { a: usize, a2: usize, b: usize },
    #[error("lukasiewicz combination needs evenly spaced levels (0, 1/k, …, 1); use the table form for uneven level sets")]
    UnevenLevels,
    #[error("level {level} does not occur in this scale")]
    UnknownGrade { level: Level },
}

/// A finite, totally ordered set of truth degrees with a t-norm.
///
/// Invariants (checked exhaustively at construction):
/// - levels are strictly ascending rationals in `[0, 1]` with `0` first and
///   `1` last;
/// - the combination is commutative, associative, monotone in both arguments,
///   and has the top grade as neutral element;
/// - consequently `combine(a, b) <= min(a, b)` for all grades.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeScale {
    levels: Vec<Level>,
    /// Row-major `len × len` table of combined grade indices.
    table: Vec<u8>,
    kind: ScaleKind,
}

/// Hard cap on the number of levels; keeps exhaustive `|V|³` validation and
/// grade enumeration cheap, and lets `Grade` stay a byte.
pub const MAX_LEVELS: usize = 64;

impl GradeScale {
    /// Builds the minimum-based scale over the given levels.
    pub fn godel(levels: Vec<Level>) -> Result<Self, ScaleError> {
        let n = check_levels(&levels)?;
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = a.min(b) as u8;
            }
        }
        let scale = GradeScale { levels, table, kind: ScaleKind::Godel };
        scale.check_laws()?;
        Ok(scale)
    }

    /// Builds the Łukasiewicz scale `max(0, a + b - 1)` over evenly spaced
    /// levels `0, 1/k, …, 1`. Uneven level sets are rejected because the
    /// operation would leave the level set.
    pub fn lukasiewicz(levels: Vec<Level>) -> Result<Self, ScaleError> {
        let n = check_levels(&levels)?;
        let step = Level::new(1, (n - 1) as i64);
        for (i, level) in levels.iter().enumerate() {
            if *level != step * Level::from_integer(i as i64) {
                return Err(ScaleError::UnevenLevels);
            }
        }
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = (a + b).saturating_sub(n - 1) as u8;
            }
        }
        let scale = GradeScale { levels, table, kind: ScaleKind::Lukasiewicz };
        scale.check_laws()?;
        Ok(scale)
    }

    /// Builds a scale from an explicit row-major combination table of level
    /// indices. All monoid laws are validated exhaustively.
    pub fn from_table(levels: Vec<Level>, table: Vec<usize>) -> Result<Self, ScaleError> {
        let n = check_levels(&levels)?;
        if table.len() != n * n {
            return Err(ScaleError::BadTableSize { expected: n * n, got: table.len() });
        }
        let mut bytes = vec![0u8; n * n];
        for (pos, &entry) in table.iter().enumerate() {
            if entry >= n {
                return Err(ScaleError::TableEntryOutOfRange { row: pos / n, col: pos % n, entry });
            }
            bytes[pos] = entry as u8;
        }
        let scale = GradeScale { levels, table: bytes, kind: ScaleKind::Table };
        scale.check_laws()?;
        Ok(scale)
    }

    /// The fixture scale `{0, 1/2, 1}` with minimum combination.
    pub fn godel_three() -> Self {
        GradeScale::godel(vec![Level::zero(), Level::new(1, 2), Level::one()])
            .expect("builtin three-level scale is valid")
    }

    /// The fixture scale `{0, 1/2, 1}` with Łukasiewicz combination.
    pub fn lukasiewicz_three() -> Self {
        GradeScale::lukasiewicz(vec![Level::zero(), Level::new(1, 2), Level::one()])
            .expect("builtin three-level scale is valid")
    }

    fn check_laws(&self) -> Result<(), ScaleError> {
        let n = self.len();
        let at = |a: usize, b: usize| self.table[a * n + b] as usize;
        for a in 0..n {
            if at(a, n - 1) != a {
                return Err(ScaleError::TopNotNeutral { a });
            }
            for b in 0..n {
                if at(a, b) != at(b, a) {
                    return Err(ScaleError::NotCommutative { a, b });
                }
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(ScaleError::NotAssociative { a, b, c });
                    }
                }
                for a2 in a..n {
                    if at(a, b) > at(a2, b) {
                        return Err(ScaleError::NotMonotone { a, a2, b });
                    }
                }
            }
        }
        // Derived law: combining can never exceed either argument. It follows
        // from monotonicity and neutrality, so a failure here means the checks
        // above are broken, not the input.
        for a in 0..n {
            for b in 0..n {
                debug_assert!(at(a, b) <= a.min(b));
            }
        }
        Ok(())
    }

    /// Number of levels.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    /// True if the scale is the two-element Boolean scale.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// How the combination was specified.
    pub fn kind(&self) -> ScaleKind {
        self.kind
    }

    /// The bottom grade (level `0`).
    pub fn bot(&self) -> Grade {
        Grade(0)
    }

    /// The top grade (level `1`).
    pub fn top(&self) -> Grade {
        Grade((self.len() - 1) as u8)
    }

    /// All grades in ascending order.
    pub fn grades(&self) -> impl DoubleEndedIterator<Item = Grade> + Clone {
        (0..self.len() as u8).map(Grade)
    }

    /// The rational level named by a grade.
    pub fn level(&self, g: Grade) -> Level {
        self.levels[g.0 as usize]
    }

    /// The grade whose level equals `level`, if any.
    pub fn grade_of(&self, level: Level) -> Result<Grade, ScaleError> {
        self.levels
            .iter()
            .position(|l| *l == level)
            .map(|i| Grade(i as u8))
            .ok_or(ScaleError::UnknownGrade { level })
    }

    /// The t-norm: combines two grades.
    pub fn combine(&self, a: Grade, b: Grade) -> Grade {
        Grade(self.table[a.0 as usize * self.len() + b.0 as usize])
    }

    /// Renders a grade's level as text (`0`, `1`, `1/2`, …).
    pub fn level_text(&self, g: Grade) -> String {
        self.level(g).to_string()
    }
}

fn check_levels(levels: &[Level]) -> Result<usize, ScaleError> {
    let n = levels.len();
    if n < 2 {
        return Err(ScaleError::TooFewLevels);
    }
    if n > MAX_LEVELS {
        return Err(ScaleError::TooManyLevels { max: MAX_LEVELS, got: n });
    }
    for (i, level) in levels.iter().enumerate() {
        if *level < Level::zero() || *level > Level::one() {
            return Err(ScaleError::OutOfRange { level: *level });
        }
        if i > 0 && levels[i - 1] >= *level {
            return Err(ScaleError::NotAscending { index: i });
        }
    }
    if !levels[0].is_zero() || !levels[n - 1].is_one() {
        return Err(ScaleError::MissingBounds);
    }
    Ok(n)
}
