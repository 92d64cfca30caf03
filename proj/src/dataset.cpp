#include "lamarck/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lamarck/rng.hpp"

namespace lamarck {

const std::vector<int>& FeatureDataset::split_indices(Split split) const {
    switch (split) {
        case Split::train: return train;
        case Split::val: return val;
        default: return test;
    }
}

void FeatureDataset::validate() const {
    if (n_features < 1) throw std::runtime_error("dataset: n_features must be >= 1");
    if (n_classes < 1) throw std::runtime_error("dataset: n_classes must be >= 1");
    if (features.size() != labels.size() * static_cast<std::size_t>(n_features))
        throw std::runtime_error("dataset: feature matrix shape mismatch");
    for (float f : features) {
        if (!std::isfinite(f)) throw std::runtime_error("dataset: non-finite feature value");
    }
    for (int y : labels) {
        if (y < 0 || y >= n_classes) throw std::runtime_error("dataset: label out of range");
    }
}

namespace {

constexpr char kMagic[5] = {'F', 'E', 'A', 'T', '1'};

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("bin dataset: truncated header");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

FeatureDataset load_bin(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);
    char magic[5];
    in.read(magic, 5);
    if (!in || std::memcmp(magic, kMagic, 5) != 0)
        throw std::runtime_error("bin dataset: bad magic bytes");
    const std::uint32_t n = read_u32(in);
    const std::uint32_t f = read_u32(in);
    const std::uint32_t c = read_u32(in);
    if (n == 0 || f == 0 || c == 0)
        throw std::runtime_error("bin dataset: zero-sized dimensions");

    FeatureDataset ds;
    ds.n_features = static_cast<int>(f);
    ds.n_classes = static_cast<int>(c);
    ds.features.resize(static_cast<std::size_t>(n) * f);
    static_assert(sizeof(float) == 4);
    in.read(reinterpret_cast<char*>(ds.features.data()),
            static_cast<std::streamsize>(ds.features.size() * sizeof(float)));
    if (!in) throw std::runtime_error("bin dataset: truncated feature payload");

    std::vector<unsigned char> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (!in) throw std::runtime_error("bin dataset: truncated label payload");
    ds.labels.assign(raw.begin(), raw.end());
    ds.validate();
    return ds;
}

FeatureDataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv dataset: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> header;
    std::stringstream hs(line);
    std::string tok;
    while (std::getline(hs, tok, ',')) header.push_back(tok);
    if (header.size() < 2 || header.back() != "label")
        throw std::runtime_error("csv dataset: header must be f0,...,label");
    const int nf = static_cast<int>(header.size()) - 1;
    for (int i = 0; i < nf; ++i) {
        if (header[i] != "f" + std::to_string(i))
            throw std::runtime_error("csv dataset: header must be f0,...,label");
    }

    FeatureDataset ds;
    ds.n_features = nf;
    int max_label = -1;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ls(line);
        int col = 0;
        while (std::getline(ls, tok, ',')) {
            ++col;
            std::size_t pos = 0;
            if (col <= nf) {
                double v = 0.0;
                try {
                    v = std::stod(tok, &pos);
                } catch (const std::exception&) {
                    pos = std::string::npos;
                }
                if (pos != tok.size())
                    throw std::runtime_error("csv dataset: bad number at row " + std::to_string(row));
                ds.features.push_back(static_cast<float>(v));
            } else if (col == nf + 1) {
                int y = -1;
                try {
                    y = std::stoi(tok, &pos);
                } catch (const std::exception&) {
                    pos = std::string::npos;
                }
                if (pos != tok.size() || y < 0)
                    throw std::runtime_error("csv dataset: bad label at row " + std::to_string(row));
                ds.labels.push_back(y);
                max_label = std::max(max_label, y);
            }
        }
        if (col != nf + 1)
            throw std::runtime_error("csv dataset: wrong column count at row " + std::to_string(row));
    }
    if (ds.labels.empty()) throw std::runtime_error("csv dataset: no data rows");
    ds.n_classes = max_label + 1;
    ds.validate();
    return ds;
}

}  // namespace

FeatureDataset load_features(const std::string& path, FileFormat format) {
    return format == FileFormat::bin ? load_bin(path) : load_csv(path);
}

void save_features(const FeatureDataset& ds, const std::string& path, FileFormat format) {
    ds.validate();
    if (format == FileFormat::bin) {
        if (ds.n_classes > 255)
            throw std::runtime_error("bin dataset: labels are 8-bit, n_classes must be <= 255");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write dataset file: " + path);
        out.write(kMagic, 5);
        write_u32(out, static_cast<std::uint32_t>(ds.n_samples()));
        write_u32(out, static_cast<std::uint32_t>(ds.n_features));
        write_u32(out, static_cast<std::uint32_t>(ds.n_classes));
        out.write(reinterpret_cast<const char*>(ds.features.data()),
                  static_cast<std::streamsize>(ds.features.size() * sizeof(float)));
        std::vector<unsigned char> raw(ds.labels.begin(), ds.labels.end());
        out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (!out) throw std::runtime_error("dataset write failed: " + path);
    } else {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write dataset file: " + path);
        for (int i = 0; i < ds.n_features; ++i) out << 'f' << i << ',';
        out << "label\n";
        char buf[64];
        for (int i = 0; i < ds.n_samples(); ++i) {
            const float* x = ds.row(i);
            for (int j = 0; j < ds.n_features; ++j) {
                std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(x[j]));
                out << buf << ',';
            }
            out << ds.labels[i] << '\n';
        }
        if (!out) throw std::runtime_error("dataset write failed: " + path);
    }
}

FileFormat format_from_extension(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot != std::string::npos && path.substr(dot) == ".csv") return FileFormat::csv;
    return FileFormat::bin;
}

FeatureDataset synth_blobs(int n_classes, int n_features, int n_per_class,
                           double separation, double noise_sd, std::uint64_t seed) {
    if (n_classes < 1 || n_features < 1 || n_per_class < 1)
        throw std::invalid_argument("synth_blobs: counts must be >= 1");
    if (!(separation > 0.0) || !(noise_sd > 0.0))
        throw std::invalid_argument("synth_blobs: separation and noise_sd must be > 0");

    RngStream rng(seed);

    // class centers
    std::vector<std::vector<double>> centers(n_classes, std::vector<double>(n_features, 0.0));
    if (n_features >= n_classes) {
        for (int c = 0; c < n_classes; ++c) centers[c][c] = separation;
    } else {
        for (int c = 0; c < n_classes; ++c) {
            double norm2 = 0.0;
            for (int j = 0; j < n_features; ++j) {
                centers[c][j] = rng.gaussian();
                norm2 += centers[c][j] * centers[c][j];
            }
            const double scale = separation / std::sqrt(norm2);
            for (int j = 0; j < n_features; ++j) centers[c][j] *= scale;
        }
    }

    FeatureDataset ds;
    ds.n_features = n_features;
    ds.n_classes = n_classes;
    ds.features.reserve(static_cast<std::size_t>(n_classes) * n_per_class * n_features);
    ds.labels.reserve(static_cast<std::size_t>(n_classes) * n_per_class);
    for (int c = 0; c < n_classes; ++c) {
        for (int k = 0; k < n_per_class; ++k) {
            for (int j = 0; j < n_features; ++j)
                ds.features.push_back(static_cast<float>(centers[c][j] + noise_sd * rng.gaussian()));
            ds.labels.push_back(c);
        }
    }
    ds.validate();
    return ds;
}

FeatureDataset split_dataset(FeatureDataset ds, const SplitFractions& fractions,
                             std::uint64_t seed) {
    ds.validate();
    const double sum = fractions.train + fractions.val + fractions.test;
    if (!(fractions.train > 0.0) || !(fractions.val > 0.0) || !(fractions.test > 0.0) ||
        std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("split: fractions must be positive and sum to 1");

    RngStream rng(seed);
    ds.train.clear();
    ds.val.clear();
    ds.test.clear();

    std::vector<std::vector<int>> by_class(ds.n_classes);
    for (int i = 0; i < ds.n_samples(); ++i) by_class[ds.labels[i]].push_back(i);

    for (int c = 0; c < ds.n_classes; ++c) {
        auto& idx = by_class[c];
        // seeded Fisher-Yates
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng.uniform_index(i)]);

        const auto n = idx.size();
        const auto n_train = static_cast<std::size_t>(std::floor(fractions.train * static_cast<double>(n)));
        const auto n_val = static_cast<std::size_t>(std::floor(fractions.val * static_cast<double>(n)));
        const auto n_test = static_cast<std::size_t>(std::floor(fractions.test * static_cast<double>(n)));
        const auto remainder = n - n_train - n_val - n_test;  // goes to train
        if (n_train + remainder == 0 || n_val == 0 || n_test == 0)
            throw std::runtime_error("split: a split is empty for class " + std::to_string(c));

        std::size_t p = 0;
        for (std::size_t k = 0; k < n_train + remainder; ++k) ds.train.push_back(idx[p++]);
        for (std::size_t k = 0; k < n_val; ++k) ds.val.push_back(idx[p++]);
        for (std::size_t k = 0; k < n_test; ++k) ds.test.push_back(idx[p++]);
    }
    std::sort(ds.train.begin(), ds.train.end());
    std::sort(ds.val.begin(), ds.val.end());
    std::sort(ds.test.begin(), ds.test.end());
    return ds;
}

std::uint64_t dataset_hash(const FeatureDataset& ds) {
    std::uint64_t h = 1469598103934665603ull;  // FNV offset basis
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 1099511628211ull;
        }
    };
    const std::uint32_t dims[3] = {static_cast<std::uint32_t>(ds.n_samples()),
                                   static_cast<std::uint32_t>(ds.n_features),
                                   static_cast<std::uint32_t>(ds.n_classes)};
    mix(dims, sizeof dims);
    mix(ds.features.data(), ds.features.size() * sizeof(float));
    for (int y : ds.labels) mix(&y, sizeof y);
    for (const auto* split : {&ds.train, &ds.val, &ds.test}) {
        const std::uint32_t n = static_cast<std::uint32_t>(split->size());
        mix(&n, sizeof n);
        for (int i : *split) mix(&i, sizeof i);
    }
    return h;
}

}  // namespace lamarck
