#pragma once

namespace mhdadm {

/// Worker threads used for internal loops. Read once from MHDADM_THREADS
/// (0 or unset = hardware concurrency); set_thread_count() overrides it.
int thread_count();
void set_thread_count(int threads);

/// Caps thread_count() on the calling thread for the lifetime of the
/// object, e.g. inside the members of a parallel sweep.
class ScopedThreadLimit {
public:
    explicit ScopedThreadLimit(int threads);
    ~ScopedThreadLimit();
    ScopedThreadLimit(const ScopedThreadLimit&) = delete;
    ScopedThreadLimit& operator=(const ScopedThreadLimit&) = delete;

private:
    int previous_;
};

}  // namespace mhdadm
