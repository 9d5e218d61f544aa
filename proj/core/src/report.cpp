#include "nslab/report.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "nslab/errors.hpp"

namespace nslab {

std::string format_real(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fnv1a64_hex(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string config_hash(const RunConfig& config)
{
    return fnv1a64_hex(canonical_text(config));
}

void write_timeseries(std::ostream& out, const TrajectoryRecord& record)
{
    out << "t,energy,dirichlet,work,balance_residual,div_max\n";
    for (std::size_t s = 0; s < record.snapshot_steps.size(); ++s) {
        const auto n = record.snapshot_steps[s];
        const double div = s < record.div_max.size() ? record.div_max[s] : std::numeric_limits<double>::quiet_NaN();
        out << format_real(record.times[n]) << ',' << format_real(record.energy[n]) << ','
            << format_real(record.dirichlet[n]) << ',' << format_real(record.work[n]) << ','
            << format_real(record.balance_residual[n]) << ',' << format_real(div) << '\n';
    }
}

void write_gronwall_csv(std::ostream& out, const GronwallCertificate& cert)
{
    out << "t,w_energy,envelope\n";
    for (std::size_t i = 0; i < cert.times.size(); ++i) {
        out << format_real(cert.times[i]) << ',' << format_real(cert.w_energy[i]) << ','
            << format_real(cert.envelope[i]) << '\n';
    }
}

std::string certificate_json(const std::vector<QuadFormCertificate>& certs, const std::string& hash,
                             const std::string& c_source)
{
    nlohmann::ordered_json doc;
    doc["config_hash"] = hash;
    doc["c_source"] = c_source;
    doc["c_used"] = certs.empty() ? 0.0 : certs.front().c_used;
    bool all = true;
    auto list = nlohmann::ordered_json::array();
    for (const auto& c : certs) {
        nlohmann::ordered_json item;
        item["time"] = c.time;
        item["lhs"] = c.lhs;
        item["rhs"] = c.rhs;
        item["holds"] = c.holds;
        item["c_used"] = c.c_used;
        item["nu"] = c.nu;
        item["lambda1"] = c.lambda1;
        if (c.has_histogram) {
            nlohmann::ordered_json hist;
            for (std::size_t k = 0; k < c.histogram.size(); ++k) {
                hist[to_string(static_cast<Definiteness>(k))] = c.histogram[k];
            }
            item["pointwise_class_histogram"] = hist;
        } else {
            item["pointwise_class_histogram"] = nullptr;
        }
        list.push_back(item);
        all = all && c.holds;
    }
    doc["holds"] = all;
    doc["certificates"] = list;
    return doc.dump(2) + "\n";
}

std::string gronwall_json(const GronwallCertificate& cert, double epsilon, double c_used, const std::string& hash)
{
    nlohmann::ordered_json doc;
    doc["config_hash"] = hash;
    doc["epsilon"] = epsilon;
    doc["c_used"] = c_used;
    doc["C_used"] = cert.C_used;
    doc["max_ratio"] = cert.max_ratio;
    doc["holds"] = cert.holds;
    return doc.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

} // namespace nslab
