#include "mhdadm/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "mhdadm/errors.hpp"

namespace mhdadm {

namespace {

template <typename T>
T byteswap(T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    std::reverse(std::begin(bytes), std::end(bytes));
    std::memcpy(&v, bytes, sizeof(T));
    return v;
}

class Writer {
public:
    void raw(const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        buf_.insert(buf_.end(), b, b + n);
    }
    template <typename T>
    void le(T v) {
        if constexpr (std::endian::native == std::endian::big) v = byteswap(v);
        raw(&v, sizeof(T));
    }
    const std::vector<unsigned char>& bytes() const { return buf_; }

private:
    std::vector<unsigned char> buf_;
};

class Reader {
public:
    explicit Reader(std::vector<unsigned char> data) : data_(std::move(data)) {}

    void raw(void* p, std::size_t n) {
        if (pos_ + n > data_.size()) throw SnapshotError("snapshot is truncated");
        std::memcpy(p, data_.data() + pos_, n);
        pos_ += n;
    }
    template <typename T>
    T get() {
        T v;
        raw(&v, sizeof(T));
        if (swap_) v = byteswap(v);
        return v;
    }
    void set_file_endian(std::endian e) { swap_ = e != std::endian::native; }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    std::vector<unsigned char> data_;
    std::size_t pos_ = 0;
    bool swap_ = false;
};

void write_field(Writer& w, const char* name, const SpectralField& f) {
    char tag[16] = {};
    std::strncpy(tag, name, sizeof(tag) - 1);
    w.raw(tag, sizeof(tag));
    for (std::size_t k = 0; k < f.modes(); ++k) {
        for (int c = 0; c < 3; ++c) {
            w.le(f.at(c, k).real());
            w.le(f.at(c, k).imag());
        }
    }
}

SpectralField read_field(Reader& r, const Grid& g, const char* expected) {
    char tag[16];
    r.raw(tag, sizeof(tag));
    if (tag[15] != '\0' || std::strncmp(tag, expected, sizeof(tag)) != 0)
        throw SnapshotError("snapshot field name mismatch: expected '" + std::string(expected) + "'");
    SpectralField f(g, 3);
    for (std::size_t k = 0; k < f.modes(); ++k) {
        for (int c = 0; c < 3; ++c) {
            const double re = r.get<double>();
            const double im = r.get<double>();
            f.at(c, k) = {re, im};
        }
    }
    return f;
}

}  // namespace

void write_snapshot(const SolverState& s, const std::string& path) {
    const Grid& g = s.w.grid();
    Writer w;
    w.raw(kSnapshotMagic, sizeof(kSnapshotMagic));
    w.le<std::uint32_t>(kSnapshotVersion);
    w.le<std::uint32_t>(static_cast<std::uint32_t>(g.n()));
    w.le<double>(g.period());
    w.le<double>(s.time);
    w.le<std::uint32_t>(2);
    write_field(w, "w", s.w);
    write_field(w, "b", s.b);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(w.bytes().data()), static_cast<std::streamsize>(w.bytes().size()));
    if (!out) throw SnapshotError("write to '" + path + "' failed");
}

SolverState read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open snapshot '" + path + "'");
    std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Reader r(std::move(data));

    char magic[8];
    r.raw(magic, sizeof(magic));
    if (std::memcmp(magic, kSnapshotMagic, sizeof(magic)) != 0) throw SnapshotError("bad snapshot magic");

    r.set_file_endian(std::endian::little);
    std::uint32_t version = r.get<std::uint32_t>();
    if (version == byteswap(kSnapshotVersion)) {
        r.set_file_endian(std::endian::big);
        version = kSnapshotVersion;
    }
    if (version != kSnapshotVersion) throw SnapshotError("unsupported snapshot version " + std::to_string(version));

    const auto n = r.get<std::uint32_t>();
    const double period = r.get<double>();
    const double time = r.get<double>();
    const auto count = r.get<std::uint32_t>();
    if (n < 2 || n > 4096) throw SnapshotError("implausible snapshot grid size " + std::to_string(n));
    if (count != 2) throw SnapshotError("snapshot must hold 2 fields, found " + std::to_string(count));
    const std::size_t payload = 2 * (16 + static_cast<std::size_t>(n) * n * n * 3 * 16);
    if (r.remaining() < payload) throw SnapshotError("snapshot is truncated");
    if (r.remaining() > payload) throw SnapshotError("snapshot has trailing bytes");

    Grid grid(static_cast<int>(n), period);
    SpectralField w = read_field(r, grid, "w");
    SpectralField b = read_field(r, grid, "b");
    try {
        check_hermitian(w);
        check_hermitian(b);
    } catch (const SymmetryError& e) {
        throw SnapshotError(std::string("snapshot field violates Hermitian symmetry: ") + e.what());
    }
    return SolverState{time, std::move(w), std::move(b), SpectralField(grid, 3)};
}

}  // namespace mhdadm
