#include "cavitysim/fock_space.hpp"

#include <algorithm>
#include <set>

namespace cavitysim {

FockSpace::FockSpace(std::vector<int> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
    if (dims_.empty()) throw validation_error("FockSpace: no subsystems");
    if (dims_.size() != labels_.size())
        throw validation_error("FockSpace: dims/labels size mismatch");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size())
        throw validation_error("FockSpace: duplicate subsystem label");
    total_ = 1;
    for (int d : dims_) {
        if (d < 2) throw validation_error("FockSpace: every dim must be >= 2");
        total_ *= d;
    }
    strides_.assign(dims_.size(), 1);
    for (int k = static_cast<int>(dims_.size()) - 2; k >= 0; --k)
        strides_[k] = strides_[k + 1] * dims_[k + 1];
}

std::shared_ptr<const FockSpace> FockSpace::make(std::vector<int> dims,
                                                 std::vector<std::string> labels) {
    return std::shared_ptr<const FockSpace>(
        new FockSpace(std::move(dims), std::move(labels)));
}

int FockSpace::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        throw validation_error("FockSpace: unknown subsystem '" + label + "'");
    return static_cast<int>(it - labels_.begin());
}

bool FockSpace::has(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

int FockSpace::level_of(int basis_index, int k) const {
    return (basis_index / strides_.at(k)) % dims_.at(k);
}

int FockSpace::basis_index(const std::vector<int>& levels) const {
    if (levels.size() != dims_.size())
        throw validation_error("FockSpace: wrong number of levels");
    int idx = 0;
    for (size_t k = 0; k < dims_.size(); ++k) {
        if (levels[k] < 0 || levels[k] >= dims_[k])
            throw validation_error("FockSpace: level out of range");
        idx += levels[k] * strides_[k];
    }
    return idx;
}

SpacePtr make_cavity_space(int cavity_dim) {
    return FockSpace::make({cavity_dim}, {kCavity});
}

SpacePtr make_cavity_transmon_space(int cavity_dim, int transmon_dim) {
    return FockSpace::make({cavity_dim, transmon_dim}, {kCavity, kTransmon});
}

SpacePtr make_full_space(int cavity_dim, int transmon_dim, int readout_dim) {
    return FockSpace::make({cavity_dim, transmon_dim, readout_dim},
                           {kCavity, kTransmon, kReadout});
}

} // namespace cavitysim
