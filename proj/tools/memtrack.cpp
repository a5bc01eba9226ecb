#include "memtrack.hpp"

#include <malloc.h>

#include <atomic>
#include <cstdlib>
#include <new>

namespace {

std::atomic<bool> g_enabled{false};
std::atomic<int64_t> g_current{0};
std::atomic<uint64_t> g_peak{0};

void note_alloc(void* p) {
  if (!g_enabled.load(std::memory_order_relaxed)) return;
  const int64_t size = static_cast<int64_t>(malloc_usable_size(p));
  const int64_t now = g_current.fetch_add(size, std::memory_order_relaxed) + size;
  if (now > 0) {
    uint64_t cur = static_cast<uint64_t>(now);
    uint64_t prev = g_peak.load(std::memory_order_relaxed);
    while (prev < cur && !g_peak.compare_exchange_weak(prev, cur, std::memory_order_relaxed)) {
    }
  }
}

void note_free(void* p) {
  if (!g_enabled.load(std::memory_order_relaxed)) return;
  g_current.fetch_sub(static_cast<int64_t>(malloc_usable_size(p)), std::memory_order_relaxed);
}

void* tracked_new(std::size_t size) {
  void* p = std::malloc(size ? size : 1);
  if (p == nullptr) throw std::bad_alloc();
  note_alloc(p);
  return p;
}

void tracked_delete(void* p) noexcept {
  if (p == nullptr) return;
  note_free(p);
  std::free(p);
}

}  // namespace

void memtrack_enable() { g_enabled.store(true, std::memory_order_relaxed); }

uint64_t memtrack_peak_bytes() { return g_peak.load(std::memory_order_relaxed); }

void* operator new(std::size_t size) { return tracked_new(size); }
void* operator new[](std::size_t size) { return tracked_new(size); }
void* operator new(std::size_t size, const std::nothrow_t&) noexcept {
  void* p = std::malloc(size ? size : 1);
  if (p != nullptr) note_alloc(p);
  return p;
}
void* operator new[](std::size_t size, const std::nothrow_t&) noexcept {
  void* p = std::malloc(size ? size : 1);
  if (p != nullptr) note_alloc(p);
  return p;
}

void operator delete(void* p) noexcept { tracked_delete(p); }
void operator delete[](void* p) noexcept { tracked_delete(p); }
void operator delete(void* p, std::size_t) noexcept { tracked_delete(p); }
void operator delete[](void* p, std::size_t) noexcept { tracked_delete(p); }
void operator delete(void* p, const std::nothrow_t&) noexcept { tracked_delete(p); }
void operator delete[](void* p, const std::nothrow_t&) noexcept { tracked_delete(p); }
