#include <fstream>

#include <json.hpp>

#include "ncis/perp.hpp"

namespace ncis {

using nlohmann::json;

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string ResultCache::record_name(SystemId system, int n, int d, Mode mode, std::optional<u64> prime,
                                     const GeneratorOptions& gens) {
    return to_string(system) + "_n" + std::to_string(n) + "_d" + std::to_string(d) + "_" + to_string(mode) + "_p" +
           (prime ? std::to_string(*prime) : std::string("none")) + "_" + (gens.small_sym ? "small" : "full") +
           ".json";
}

std::optional<DegreeResult> ResultCache::load(SystemId system, int n, int d, Mode mode, std::optional<u64> prime,
                                              const GeneratorOptions& gens) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(dir_ / record_name(system, n, d, mode, prime, gens));
    if (!in) return std::nullopt;
    json j;
    try {
        in >> j;
        DegreeResult r;
        r.d = j.at("d").get<int>();
        r.n_cols = j.at("n_cols").get<u64>();
        r.perp_dim = j.at("perp_dim").get<u64>();
        r.rank.rank = j.at("rank").get<u64>();
        r.rank.mode = parse_mode(j.at("mode").get<std::string>());
        if (!j.at("prime").is_null()) r.rank.prime = j.at("prime").get<u64>();
        r.rank.n_rows_consumed = j.value("n_rows_consumed", u64{0});
        r.elapsed_ms = j.value("elapsed_ms", u64{0});
        r.from_cache = true;
        if (r.d != d || j.at("system").get<std::string>() != to_string(system) || j.at("n").get<int>() != n)
            return std::nullopt;
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void ResultCache::store(SystemId system, int n, Mode mode, std::optional<u64> prime, const DegreeResult& r,
                        const GeneratorOptions& gens) const {
    if (!enabled()) return;
    std::filesystem::create_directories(dir_);
    json j;
    j["system"] = to_string(system);
    j["n"] = n;
    j["d"] = r.d;
    j["mode"] = to_string(r.rank.mode);
    j["prime"] = r.rank.prime ? json(*r.rank.prime) : json(nullptr);
    j["n_cols"] = r.n_cols;
    j["rank"] = r.rank.rank;
    j["perp_dim"] = r.perp_dim;
    j["n_rows_consumed"] = r.rank.n_rows_consumed;
    j["generators"] = gens.small_sym ? "small" : "full";
    j["elapsed_ms"] = r.elapsed_ms;
    std::ofstream out(dir_ / record_name(system, n, r.d, mode, prime, gens));
    out << j.dump(2) << "\n";
}

std::filesystem::path ResultCache::checkpoint_path(SystemId system, int n, Mode mode, u64 prime,
                                                   const GeneratorOptions& gens) const {
    return dir_ / (to_string(system) + "_n" + std::to_string(n) + "_" + to_string(mode) + "_p" +
                   std::to_string(prime) + "_" + (gens.small_sym ? "small" : "full") + ".tower");
}

std::vector<std::filesystem::path> ResultCache::entries() const {
    std::vector<std::filesystem::path> out;
    if (!enabled() || !std::filesystem::exists(dir_)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir_)) {
        const auto ext = e.path().extension();
        if (ext == ".json" || ext == ".tower") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t ResultCache::clear() const {
    std::size_t removed = 0;
    for (const auto& p : entries()) removed += std::filesystem::remove(p) ? 1 : 0;
    return removed;
}

}  // namespace ncis
