#include "mhdadm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace mhdadm {

namespace {

int resolve(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

int from_environment() {
    const char* env = std::getenv("MHDADM_THREADS");
    int requested = 0;
    if (env != nullptr) {
        try {
            requested = std::stoi(env);
        } catch (const std::exception&) {
            requested = 0;
        }
    }
    return resolve(requested);
}

std::atomic<int>& current() {
    static std::atomic<int> value{from_environment()};
    return value;
}

thread_local int local_limit = 0;

}  // namespace

int thread_count() {
    const int global = current().load();
    return local_limit > 0 ? std::min(local_limit, global) : global;
}

void set_thread_count(int threads) { current().store(resolve(threads)); }

ScopedThreadLimit::ScopedThreadLimit(int threads) : previous_(local_limit) { local_limit = std::max(threads, 1); }

ScopedThreadLimit::~ScopedThreadLimit() { local_limit = previous_; }

}  // namespace mhdadm
