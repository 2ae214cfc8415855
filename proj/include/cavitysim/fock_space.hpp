#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cavitysim/errors.hpp"

namespace cavitysim {

/// Tensor product of truncated Fock spaces. Subsystem order is fixed at
/// construction; every operator and state built on a space agrees on it.
/// Immutable, shared by reference between operators and states.
class FockSpace {
public:
    static std::shared_ptr<const FockSpace> make(std::vector<int> dims,
                                                 std::vector<std::string> labels);

    int subsystem_count() const { return static_cast<int>(dims_.size()); }
    int dim(int k) const { return dims_.at(k); }
    int total_dim() const { return total_; }
    const std::string& label(int k) const { return labels_.at(k); }
    const std::vector<int>& dims() const { return dims_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Index of a subsystem by name; throws validation_error if unknown.
    int index_of(const std::string& label) const;
    bool has(const std::string& label) const;

    /// Fock level of subsystem k in composite basis state `basis_index`
    /// (first subsystem varies slowest).
    int level_of(int basis_index, int k) const;

    /// Composite basis index for the given per-subsystem levels.
    int basis_index(const std::vector<int>& levels) const;

    bool same_layout(const FockSpace& other) const {
        return dims_ == other.dims_ && labels_ == other.labels_;
    }

private:
    FockSpace(std::vector<int> dims, std::vector<std::string> labels);

    std::vector<int> dims_;
    std::vector<std::string> labels_;
    std::vector<int> strides_;
    int total_ = 0;
};

using SpacePtr = std::shared_ptr<const FockSpace>;

SpacePtr make_cavity_space(int cavity_dim);
SpacePtr make_cavity_transmon_space(int cavity_dim, int transmon_dim = 3);
SpacePtr make_full_space(int cavity_dim, int transmon_dim, int readout_dim);

inline constexpr const char* kCavity = "cavity";
inline constexpr const char* kTransmon = "transmon";
inline constexpr const char* kReadout = "readout";

} // namespace cavitysim
