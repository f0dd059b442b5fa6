// Minimal library walkthrough: converge the single economy, then run the
// bundled sectoral drift scenario and watch the aggregate labour share
// hold still while the sector shares move.

#include <fstream>
#include <iostream>

#include "bowley/dynamics.hpp"
#include "bowley/scenario.hpp"
#include "bowley/sectors.hpp"

int main() {
    bowley::EconomyParams params;
    params.wage_bill = 1.0;
    params.profit_rate = 0.05;
    params.consumption_rate = 0.25;
    params.initial_wealth = 1.0;

    const bowley::Trajectory traj = bowley::simulate_single(params);
    const auto& last = traj.final_point();
    std::cout << "single economy: steps=" << traj.steps_taken()
              << " wealth=" << last.wealth << " beta=" << last.bowley
              << " (predicted " << bowley::bowley_from_rates(0.05, 0.25) << ")\n";

    std::ifstream file("fixtures/young_us.scenario");
    if (!file) {
        std::cout << "run from the repository root to load fixtures/young_us.scenario\n";
        return 0;
    }
    const bowley::SectorScenario scenario = bowley::read_scenario(file);
    const bowley::SectoralTrajectory sectors = bowley::simulate_sectors(scenario);

    std::cout << "sector shares over " << scenario.horizon << " years:\n";
    for (std::size_t i = 0; i < sectors.sector_names.size(); ++i)
        std::cout << "  " << sectors.sector_names[i] << ": "
                  << sectors.steps.front().sectors[i].bowley << " -> "
                  << sectors.steps.back().sectors[i].bowley << "\n";
    std::cout << "aggregate: " << sectors.steps.front().bowley << " -> "
              << sectors.steps.back().bowley << "\n";
    return 0;
}
