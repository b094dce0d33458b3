#include "uavsim/csvio.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace uavsim {

std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

namespace {

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

void write_loss_csv(const std::string& path, const std::vector<LossEntry>& rows) {
    std::ofstream out = open_csv(path);
    out << "step,loss\n";
    for (const LossEntry& r : rows) {
        out << r.step << ',' << format_double(r.loss) << '\n';
    }
}

void write_episodes_csv(const std::string& path, const std::vector<EpisodeStats>& rows) {
    std::ofstream out = open_csv(path);
    out << "episode,throughput_bits,violation_rate,epsilon\n";
    for (const EpisodeStats& r : rows) {
        out << r.episode << ',' << format_double(r.throughput) << ','
            << format_double(r.violation_rate) << ',' << format_double(r.epsilon) << '\n';
    }
}

void write_slots_csv(const std::string& path, const std::vector<SlotLog>& rows, int user_count) {
    std::ofstream out = open_csv(path);
    out << "slot,sum_rate";
    for (int k = 0; k < user_count; ++k) out << ",rate_" << k;
    out << ",lambda\n";
    for (const SlotLog& r : rows) {
        out << r.slot << ',' << format_double(r.sum_rate);
        for (int k = 0; k < user_count; ++k) out << ',' << format_double(r.user_rate[k]);
        const int lambda = std::accumulate(r.lambda.begin(), r.lambda.end(), 0);
        out << ',' << lambda << '\n';
    }
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ofstream out = open_csv(path);
    out << "cell,metric,n,mean,std\n";
    for (const SummaryRow& r : rows) {
        out << r.cell << ',' << r.metric << ',' << r.n << ',' << format_double(r.mean) << ','
            << format_double(r.std_dev) << '\n';
    }
}

}  // namespace uavsim
