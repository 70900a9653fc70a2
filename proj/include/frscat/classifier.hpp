#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frscat/features.hpp"

namespace frscat {

/// Per-class affine subspace: sample mean plus an orthonormal basis of the
/// top principal directions. Eigenvector signs follow a fixed convention
/// (largest-magnitude component positive) so models are bit-reproducible.
struct PcaClassModel {
    int class_id = 0;
    std::size_t length = 0;              // L
    std::size_t dims = 0;                // retained directions (may fall below
                                         // the request when the data is rank
                                         // deficient)
    std::vector<double> mean;            // length L
    std::vector<double> basis;           // L x dims, column-major
};

/// Split/evaluation protocol. pca_dims lists the retained dimensions to
/// sweep; the seed is mandatory (no wall-clock defaults anywhere).
struct EvalProtocol {
    double train_ratio = 0.5;
    int repetitions = 5;
    std::vector<int> pca_dims;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Fits the class subspace from column samples (samples[i] points at a
/// contiguous length-L vector). Requires at least two samples and
/// d <= min(L, N-1); an all-identical training set is rejected with the
/// class named.
PcaClassModel train_pca(const std::vector<const double*>& samples, std::size_t length, int d,
                        int class_id);

struct Classification {
    int label = 0;
    std::vector<double> errors;  // approximation error per model, input order
};

/// Projection residual per class; the label is the argmin with ties broken
/// by the lowest class id.
Classification classify(const double* x, std::size_t length,
                        const std::vector<PcaClassModel>& models);

/// Mean error rate per (order setting, pca dimension), averaged over seeded
/// stratified splits, plus the per-setting minimum over dimensions.
struct ErrorTable {
    std::vector<FractionalOrderPair> order_grid;
    std::vector<int> pca_dims;
    std::vector<double> mean_error;  // settings x dims, dims fastest
    std::vector<double> per_order_min;

    double cell(std::size_t d, std::size_t k) const { return mean_error[d * pca_dims.size() + k]; }
};

ErrorTable evaluate(const FeatureTensor& tensor, const EvalProtocol& protocol);

void write_error_table_csv(const ErrorTable& table, const std::string& path);

/// Binary model container (magic "FRSM"); bit-exact round trip.
void save_models(const std::vector<PcaClassModel>& models, const std::string& path);
std::vector<PcaClassModel> load_models(const std::string& path);

}  // namespace frscat
