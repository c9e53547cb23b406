//! Exact Lebesgue measure for canonical interval sets and certified
//! two-sided bounds for countable families.
//!
//! For a family truncated at depth N the lower bound is the exact measure of
//! the merged first N members, and the upper bound is the exact series total
//! Σ s_i: the subadditivity step of the measure chain
//! 0 < s_i = λ(U_i) ≤ λ(U) ≤ Σ λ(U_i) = a. Complement measures are only
//! computed relative to a window, which keeps the positivity argument finite
//! and exact.

use crate::interval::Interval;
use crate::point::Point;
use crate::rational::MeasureValue;
use crate::sets::{normalize, CanonicalIntervalSet, FamilyDescriptor, SetExpr};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational lower/upper bounds on Lebesgue measure at truncation depth
/// `truncation`. For finite exact inputs `lower == upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureBounds {
    pub lower: MeasureValue,
    pub upper: MeasureValue,
    pub truncation: u32,
}

impl MeasureBounds {
    fn exact(v: MeasureValue, truncation: u32) -> Self {
        MeasureBounds {
            lower: v.clone(),
            upper: v,
            truncation,
        }
    }
}

/// Sum of interval lengths; points contribute zero; +∞ when any endpoint is
/// infinite.
pub fn measure_exact(c: &CanonicalIntervalSet) -> MeasureValue {
    let mut total = MeasureValue::zero();
    for iv in &c.intervals {
        total = total.add(&iv.length());
    }
    total
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeasureShapeError {
    #[error("unsupported shape for measure: {node} (supported: interval unions, paperU families, and windowed complements such as ~paperU(a=1) & (0,3))")]
    Unsupported { node: &'static str },
    #[error("complement measures need a bounded window: intersect with an interval, e.g. ~paperU(a=1) & (0,3)")]
    ComplementWithoutWindow,
    #[error("a measure window must be a single interval, got {node}")]
    BadWindow { node: &'static str },
}

enum Content {
    Pieces(Vec<Interval>, Vec<Point>),
    Family(FamilyDescriptor),
    ComplementPieces(Vec<Interval>, Vec<Point>),
    ComplementFamily(FamilyDescriptor),
}

fn collect_pieces(
    s: &SetExpr,
    intervals: &mut Vec<Interval>,
    points: &mut Vec<Point>,
) -> Result<(), MeasureShapeError> {
    match s {
        SetExpr::Empty => Ok(()),
        SetExpr::Full => {
            intervals.push(Interval::full_line());
            Ok(())
        }
        SetExpr::Ival(iv) => {
            intervals.push(iv.clone());
            Ok(())
        }
        SetExpr::Single(p) => {
            points.push(p.clone());
            Ok(())
        }
        SetExpr::FiniteUnion(parts) => {
            for p in parts {
                collect_pieces(p, intervals, points)?;
            }
            Ok(())
        }
        other => Err(MeasureShapeError::Unsupported {
            node: other.node_name(),
        }),
    }
}

fn classify_content(s: &SetExpr) -> Result<Content, MeasureShapeError> {
    match s {
        SetExpr::Family(fd) => Ok(Content::Family(fd.clone())),
        SetExpr::Complement(inner) => match classify_content(inner)? {
            Content::Pieces(iv, pts) => Ok(Content::ComplementPieces(iv, pts)),
            Content::Family(fd) => Ok(Content::ComplementFamily(fd)),
            _ => Err(MeasureShapeError::Unsupported {
                node: s.node_name(),
            }),
        },
        other => {
            let mut intervals = Vec::new();
            let mut points = Vec::new();
            collect_pieces(other, &mut intervals, &mut points)?;
            Ok(Content::Pieces(intervals, points))
        }
    }
}

/// Bounds for a family restricted to `window` (`None` = unwindowed):
/// lower is the merged measure of the first n members inside the window,
/// upper additionally caps by the window width, the series total, and the
/// tail budget Σ_{i>n} s_i.
fn family_bounds(fd: &FamilyDescriptor, window: Option<&Interval>, n: u32) -> MeasureBounds {
    let truncated = normalize(&fd.truncated(n));
    let clipped = match window {
        Some(w) => truncated.intersect_window(w),
        None => truncated,
    };
    let lower = measure_exact(&clipped);
    let total = MeasureValue::Finite(fd.total());
    let upper = match window {
        None => total,
        Some(w) => {
            let tail = MeasureValue::Finite(fd.lengths.tail(n));
            w.length().min(total).min(lower.add(&tail))
        }
    };
    MeasureBounds {
        lower,
        upper,
        truncation: n,
    }
}

/// Certified measure bounds for the representable fragment: finite interval
/// unions (exact), families, and either of these complemented inside a
/// window. Lower bounds are nondecreasing and upper bounds nonincreasing in
/// the truncation depth.
pub fn measure_bounds(s: &SetExpr, n: u32) -> Result<MeasureBounds, MeasureShapeError> {
    // windowed form: an intersection of a window interval with content
    if let SetExpr::Intersection(parts) = s {
        if parts.len() != 2 {
            return Err(MeasureShapeError::Unsupported {
                node: s.node_name(),
            });
        }
        let (window, content) = match (&parts[0], &parts[1]) {
            (SetExpr::Ival(w), c) => (w, c),
            (c, SetExpr::Ival(w)) => (w, c),
            (a, _) => {
                return Err(MeasureShapeError::BadWindow {
                    node: a.node_name(),
                })
            }
        };
        let width = window.length();
        return Ok(match classify_content(content)? {
            Content::Pieces(intervals, points) => {
                let c = CanonicalIntervalSet::new(intervals, points).intersect_window(window);
                MeasureBounds::exact(measure_exact(&c), n)
            }
            Content::Family(fd) => family_bounds(&fd, Some(window), n),
            Content::ComplementPieces(intervals, points) => {
                let c = CanonicalIntervalSet::new(intervals, points).intersect_window(window);
                MeasureBounds::exact(width.sub_clamped(&measure_exact(&c)), n)
            }
            Content::ComplementFamily(fd) => {
                let inner = family_bounds(&fd, Some(window), n);
                MeasureBounds {
                    lower: width.sub_clamped(&inner.upper),
                    upper: width.sub_clamped(&inner.lower),
                    truncation: n,
                }
            }
        });
    }
    match classify_content(s)? {
        Content::Pieces(intervals, points) => {
            let c = CanonicalIntervalSet::new(intervals, points);
            Ok(MeasureBounds::exact(measure_exact(&c), n))
        }
        Content::Family(fd) => Ok(family_bounds(&fd, None, n)),
        Content::ComplementPieces(..) | Content::ComplementFamily(..) => {
            Err(MeasureShapeError::ComplementWithoutWindow)
        }
    }
}
