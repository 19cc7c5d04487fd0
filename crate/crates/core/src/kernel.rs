//! Event calendar and simulation clock.
//!
//! Events are popped in ascending `(fire_time, sequence)` order, where the
//! sequence number is assigned at scheduling time. Two calendars fed the same
//! sequence of `schedule` calls therefore pop identically.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use serde::Serialize;

use crate::error::KernelError;

/// Minutes since simulation start.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
pub struct SimTime(f64);

impl SimTime {
    pub const ZERO: SimTime = SimTime(0.0);

    /// Panics on negative or non-finite input; model code only builds times
    /// from sums of finite, non-negative durations.
    pub fn new(minutes: f64) -> Self {
        Self::try_new(minutes).expect("simulation time must be finite and non-negative")
    }

    pub fn try_new(minutes: f64) -> Result<Self, KernelError> {
        if minutes.is_finite() && minutes >= 0.0 {
            Ok(SimTime(minutes))
        } else {
            Err(KernelError::InvalidTime(minutes))
        }
    }

    #[inline]
    pub fn minutes(self) -> f64 {
        self.0
    }

    pub fn after(self, delay: f64) -> Self {
        SimTime::new(self.0 + delay)
    }
}

impl fmt::Display for SimTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.3}", self.0)
    }
}

/// A scheduled event.
#[derive(Debug, Clone, PartialEq)]
pub struct EventRecord<E> {
    pub time: SimTime,
    pub seq: u64,
    pub event: E,
}

struct Entry<E>(EventRecord<E>);

impl<E> PartialEq for Entry<E> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<E> Eq for Entry<E> {}

impl<E> PartialOrd for Entry<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E> Ord for Entry<E> {
    // Reversed so that `BinaryHeap` (a max-heap) yields the earliest event.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .time
            .0
            .total_cmp(&self.0.time.0)
            .then_with(|| other.0.seq.cmp(&self.0.seq))
    }
}

/// Pending-event set plus the simulation clock.
pub struct EventCalendar<E> {
    heap: BinaryHeap<Entry<E>>,
    clock: SimTime,
    next_seq: u64,
    popped: u64,
}

impl<E> Default for EventCalendar<E> {
    fn default() -> Self {
        Self::new()
    }
}

impl<E> EventCalendar<E> {
    pub fn new() -> Self {
        EventCalendar {
            heap: BinaryHeap::new(),
            clock: SimTime::ZERO,
            next_seq: 0,
            popped: 0,
        }
    }

    pub fn clock(&self) -> SimTime {
        self.clock
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Total number of successful `schedule` calls.
    pub fn scheduled_count(&self) -> u64 {
        self.next_seq
    }

    pub fn popped_count(&self) -> u64 {
        self.popped
    }

    pub fn peek_time(&self) -> Option<SimTime> {
        self.heap.peek().map(|e| e.0.time)
    }

    /// Stores `event` at `at` and returns its sequence number.
    pub fn schedule(&mut self, at: SimTime, event: E) -> Result<u64, KernelError> {
        if at.0 < self.clock.0 {
            return Err(KernelError::PastTime {
                at: at.0,
                clock: self.clock.0,
            });
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.heap.push(Entry(EventRecord {
            time: at,
            seq,
            event,
        }));
        Ok(seq)
    }

    pub fn schedule_in(&mut self, delay: f64, event: E) -> Result<u64, KernelError> {
        let at = SimTime::try_new(self.clock.0 + delay)?;
        self.schedule(at, event)
    }

    /// Removes the earliest event and advances the clock to its time.
    pub fn pop_next(&mut self) -> Option<EventRecord<E>> {
        let Entry(rec) = self.heap.pop()?;
        self.clock = rec.time;
        self.popped += 1;
        Some(rec)
    }
}

/// Model side of the event loop.
pub trait Dispatch<E> {
    type Error: From<KernelError>;

    fn dispatch(
        &mut self,
        calendar: &mut EventCalendar<E>,
        record: EventRecord<E>,
    ) -> Result<(), Self::Error>;
}

/// Pops and dispatches every event with `fire_time <= horizon`.
///
/// Returns the final clock: `horizon` if events remain beyond it, otherwise the
/// time of the last dispatched event.
pub fn run_until<E, D: Dispatch<E>>(
    calendar: &mut EventCalendar<E>,
    model: &mut D,
    horizon: SimTime,
) -> Result<SimTime, D::Error> {
    if horizon.0 <= 0.0 {
        return Ok(calendar.clock());
    }
    while let Some(next) = calendar.peek_time() {
        if next.0 > horizon.0 {
            calendar.clock = horizon;
            return Ok(horizon);
        }
        let rec = calendar.pop_next().expect("peeked event present");
        model.dispatch(calendar, rec)?;
    }
    Ok(calendar.clock())
}
