#pragma once

#include <cstdint>

/// Process-wide allocation probe backed by the global operator new/delete
/// overrides in memtrack.cpp. Enable it once, early; the peak then tracks the
/// high-water mark of live heap bytes allocated after that point. Frees of
/// blocks allocated before enabling can skew the counter slightly low, so
/// treat the number as a probe, not an audit.
void memtrack_enable();
uint64_t memtrack_peak_bytes();
