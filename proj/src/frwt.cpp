#include "frscat/frwt.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "frscat/errors.hpp"

namespace frscat {

std::shared_ptr<const ChirpPair> cached_chirps(int width, int height,
                                               const FractionalOrderPair& orders) {
    using Key = std::tuple<int, int, double, double>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const ChirpPair>> cache;

    orders.validate();
    Key key{width, height, orders.alpha1, orders.alpha2};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto pair = std::make_shared<ChirpPair>();
    pair->plus = chirp(width, height, orders, +1);
    pair->minus = chirp(width, height, orders, -1);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, std::move(pair));
    (void)inserted;  // a racing builder may have won; either value is identical
    return it->second;
}

ComplexImage frac_convolve(const ComplexImage& x, const ComplexImage& h_hat,
                           const FractionalOrderPair& orders) {
    if (!x.same_shape(h_hat)) throw shape_error("frac_convolve: signal and filter dimensions differ");
    auto chirps = cached_chirps(x.width, x.height, orders);
    ComplexImage f = hadamard(chirps->plus, x);
    ComplexImage spec = spectrum(f);
    hadamard_inplace(spec, h_hat);
    ComplexImage y = inverse_spectrum(spec);
    hadamard_inplace(y, chirps->minus);
    return y;
}

FrwtOutput frwt(const ComplexImage& x, const FilterBank& bank, const FractionalOrderPair& orders) {
    if (x.width != bank.spec.grid_width || x.height != bank.spec.grid_height)
        throw shape_error("frwt: signal does not match the filter bank grid");
    auto chirps = cached_chirps(x.width, x.height, orders);
    ComplexImage forward = spectrum(hadamard(chirps->plus, x));

    auto respond = [&](const ComplexImage& h_hat) {
        ComplexImage y = inverse_spectrum(hadamard(forward, h_hat));
        hadamard_inplace(y, chirps->minus);
        return y;
    };

    FrwtOutput out;
    out.orders = orders;
    out.lowpass = respond(bank.phi_hat);
    out.bandpass.reserve(bank.psi_hat.size());
    for (const auto& scales : bank.psi_hat) {
        std::vector<ComplexImage> row;
        row.reserve(scales.size());
        for (const auto& atom : scales) row.push_back(respond(atom));
        out.bandpass.push_back(std::move(row));
    }
    return out;
}

}  // namespace frscat
