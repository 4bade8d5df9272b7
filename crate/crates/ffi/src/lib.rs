//! C ABI over the `dimapf` library.
//!
//! Instances and plans cross the boundary as opaque handles that the caller
//! releases with the matching `*_free` function. Every fallible call returns a
//! [`DimapfStatus`]; on anything other than `DIMAPF_STATUS_OK` a description
//! is available from [`dimapf_last_error`] on the same thread. Strings handed
//! out by the library are released with [`dimapf_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dimapf::dimacs::{parse_dimacs, DimacsOptions};
use dimapf::format::{parse_instance, parse_plan, write_instance, write_plan};
use dimapf::graph::is_dag;
use dimapf::mapf::{validate_instance, validate_plan, MapfInstance, Plan};
use dimapf::reduction::build_reduction;
use dimapf::solver::{solve_bfs_with, Outcome, SearchLimits, SolveError, SolveOptions};

/// Result codes shared by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimapfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInstance = 4,
    InvalidPlan = 5,
    ResourceLimit = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimapfVerdict {
    Solvable = 0,
    Unsolvable = 1,
    BoundExhausted = 2,
}

/// Search settings for [`dimapf_solve`]. A zero field means "no limit".
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DimapfSolveOptions {
    pub depth_bound: u64,
    pub max_states: u64,
    pub time_limit_ms: u64,
}

pub struct DimapfInstance(MapfInstance);

pub struct DimapfPlan(Plan);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type FfiResult<T> = Result<T, DimapfStatus>;

fn err<T>(status: DimapfStatus, msg: impl Into<String>) -> FfiResult<T> {
    set_error(msg);
    Err(status)
}

/// Runs `body`, turning panics into `Internal` and writing nothing on error.
fn guard(body: impl FnOnce() -> FfiResult<()>) -> DimapfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DimapfStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            DimapfStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return err(DimapfStatus::NullArgument, format!("{what} is null"));
    }
    match CStr::from_ptr(p).to_str() {
        Ok(s) => Ok(s),
        Err(e) => err(DimapfStatus::InvalidUtf8, format!("{what}: {e}")),
    }
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    match p.as_ref() {
        Some(r) => Ok(r),
        None => err(DimapfStatus::NullArgument, format!("{what} is null")),
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> FfiResult<&'a mut T> {
    match p.as_mut() {
        Some(r) => Ok(r),
        None => err(DimapfStatus::NullArgument, format!("{what} is null")),
    }
}

fn c_string(s: String) -> *mut c_char {
    // library output never contains NUL
    CString::new(s).expect("no interior NUL").into_raw()
}

fn checked(inst: MapfInstance) -> FfiResult<MapfInstance> {
    match validate_instance(&inst) {
        Ok(()) => Ok(inst),
        Err(v) => {
            let list: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            err(DimapfStatus::InvalidInstance, list.join("; "))
        }
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn dimapf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses an instance document. On success `*out_instance` owns a new handle.
#[no_mangle]
pub unsafe extern "C" fn dimapf_instance_parse(
    document: *const c_char,
    out_instance: *mut *mut DimapfInstance,
) -> DimapfStatus {
    guard(|| {
        let slot = out(out_instance, "out_instance")?;
        let doc = text(document, "document")?;
        let inst = match parse_instance(doc) {
            Ok(i) => i,
            Err(e) => return err(DimapfStatus::ParseError, e.to_string()),
        };
        let inst = checked(inst)?;
        *slot = Box::into_raw(Box::new(DimapfInstance(inst)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn dimapf_instance_free(instance: *mut DimapfInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Serializes an instance; release the string with [`dimapf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn dimapf_instance_to_string(
    instance: *const DimapfInstance,
    out_document: *mut *mut c_char,
) -> DimapfStatus {
    guard(|| {
        let slot = out(out_document, "out_document")?;
        let inst = handle(instance, "instance")?;
        *slot = c_string(write_instance(&inst.0));
        Ok(())
    })
}

/// Vertex, arc and agent counts. Any output pointer may be null.
#[no_mangle]
pub unsafe extern "C" fn dimapf_instance_counts(
    instance: *const DimapfInstance,
    out_vertices: *mut usize,
    out_arcs: *mut usize,
    out_agents: *mut usize,
) -> DimapfStatus {
    guard(|| {
        let inst = &handle(instance, "instance")?.0;
        if let Some(v) = out_vertices.as_mut() {
            *v = inst.digraph().vertex_count();
        }
        if let Some(a) = out_arcs.as_mut() {
            *a = inst.digraph().arc_count();
        }
        if let Some(r) = out_agents.as_mut() {
            *r = inst.agent_count();
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn dimapf_instance_is_dag(
    instance: *const DimapfInstance,
    out_is_dag: *mut bool,
) -> DimapfStatus {
    guard(|| {
        let slot = out(out_is_dag, "out_is_dag")?;
        *slot = is_dag(handle(instance, "instance")?.0.digraph());
        Ok(())
    })
}

/// Reduces a DIMACS 3-CNF formula to an instance. With `pad` set, shorter
/// clauses are widened by repeating their last literal.
#[no_mangle]
pub unsafe extern "C" fn dimapf_reduce_dimacs(
    dimacs: *const c_char,
    pad: bool,
    out_instance: *mut *mut DimapfInstance,
) -> DimapfStatus {
    guard(|| {
        let slot = out(out_instance, "out_instance")?;
        let src = text(dimacs, "dimacs")?;
        let formula = match parse_dimacs(src, DimacsOptions { pad }) {
            Ok(f) => f,
            Err(e) => return err(DimapfStatus::ParseError, e.to_string()),
        };
        let art = build_reduction(&formula);
        *slot = Box::into_raw(Box::new(DimapfInstance(art.instance)));
        Ok(())
    })
}

/// Decides solvability. `options` may be null for an unbounded search. When
/// the verdict is solvable and `out_plan` is non-null, `*out_plan` receives a
/// shortest plan; otherwise it is set to null.
#[no_mangle]
pub unsafe extern "C" fn dimapf_solve(
    instance: *const DimapfInstance,
    options: *const DimapfSolveOptions,
    out_verdict: *mut DimapfVerdict,
    out_plan: *mut *mut DimapfPlan,
) -> DimapfStatus {
    guard(|| {
        let verdict = out(out_verdict, "out_verdict")?;
        let inst = &handle(instance, "instance")?.0;
        let o = options.as_ref().copied().unwrap_or_default();
        let nonzero = |x: u64| (x != 0).then_some(x);
        let opts = SolveOptions {
            depth_bound: nonzero(o.depth_bound).map(|d| d as usize),
            limits: SearchLimits {
                max_states: nonzero(o.max_states).map(|s| s as usize),
                time_limit: nonzero(o.time_limit_ms).map(std::time::Duration::from_millis),
            },
        };
        if let Some(p) = out_plan.as_mut() {
            *p = ptr::null_mut();
        }
        let res = match solve_bfs_with(inst, &opts) {
            Ok(r) => r,
            Err(e @ SolveError::ResourceLimit { .. }) => {
                return err(DimapfStatus::ResourceLimit, e.to_string())
            }
            Err(e @ SolveError::InvalidInstance(_)) => {
                return err(DimapfStatus::InvalidInstance, e.to_string())
            }
            Err(e) => return err(DimapfStatus::Internal, e.to_string()),
        };
        *verdict = match res.outcome {
            Outcome::Solvable(plan) => {
                if let Some(p) = out_plan.as_mut() {
                    *p = Box::into_raw(Box::new(DimapfPlan(plan)));
                }
                DimapfVerdict::Solvable
            }
            Outcome::Unsolvable => DimapfVerdict::Unsolvable,
            Outcome::BoundExhausted { .. } => DimapfVerdict::BoundExhausted,
        };
        Ok(())
    })
}

/// Parses a plan document against the names declared by `instance`.
#[no_mangle]
pub unsafe extern "C" fn dimapf_plan_parse(
    instance: *const DimapfInstance,
    document: *const c_char,
    out_plan: *mut *mut DimapfPlan,
) -> DimapfStatus {
    guard(|| {
        let slot = out(out_plan, "out_plan")?;
        let inst = &handle(instance, "instance")?.0;
        let doc = text(document, "document")?;
        match parse_plan(inst, doc) {
            Ok(p) => {
                *slot = Box::into_raw(Box::new(DimapfPlan(p)));
                Ok(())
            }
            Err(e) => err(DimapfStatus::ParseError, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn dimapf_plan_free(plan: *mut DimapfPlan) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

/// Number of moves, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn dimapf_plan_len(plan: *const DimapfPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn dimapf_plan_to_string(
    instance: *const DimapfInstance,
    plan: *const DimapfPlan,
    out_document: *mut *mut c_char,
) -> DimapfStatus {
    guard(|| {
        let slot = out(out_document, "out_document")?;
        let inst = &handle(instance, "instance")?.0;
        let plan = &handle(plan, "plan")?.0;
        *slot = c_string(write_plan(inst, plan));
        Ok(())
    })
}

/// `DIMAPF_STATUS_OK` when the plan is valid, `DIMAPF_STATUS_INVALID_PLAN`
/// otherwise. `out_failed_move` (nullable) receives the index of the first
/// illegal move, or the plan length when every move is legal but the goal is
/// not reached.
#[no_mangle]
pub unsafe extern "C" fn dimapf_validate_plan(
    instance: *const DimapfInstance,
    plan: *const DimapfPlan,
    out_failed_move: *mut usize,
) -> DimapfStatus {
    guard(|| {
        let inst = &handle(instance, "instance")?.0;
        let plan = &handle(plan, "plan")?.0;
        match validate_plan(inst, plan) {
            Ok(()) => Ok(()),
            Err(e) => {
                if let Some(slot) = out_failed_move.as_mut() {
                    *slot = e.index().unwrap_or(plan.len());
                }
                err(DimapfStatus::InvalidPlan, e.to_string())
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn dimapf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
