#pragma once

#include <string>
#include <vector>

#include "uavsim/env.hpp"
#include "uavsim/trainer.hpp"

namespace uavsim {

// Shortest exact decimal representation; locale-independent.
std::string format_double(double v);

// Fixed schemas, header row first, '\n' endings:
//   loss:     step,loss
//   episodes: episode,throughput_bits,violation_rate,epsilon
//   slots:    slot,sum_rate,rate_0..rate_{K-1},lambda   (lambda summed over agents)
//   summary:  cell,metric,n,mean,std
void write_loss_csv(const std::string& path, const std::vector<LossEntry>& rows);
void write_episodes_csv(const std::string& path, const std::vector<EpisodeStats>& rows);
void write_slots_csv(const std::string& path, const std::vector<SlotLog>& rows, int user_count);

struct SummaryRow {
    std::string cell;
    std::string metric;
    int n = 0;
    double mean = 0.0;
    double std_dev = 0.0;
};

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);

}  // namespace uavsim
