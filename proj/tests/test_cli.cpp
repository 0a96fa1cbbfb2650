#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "softgait/rewards.hpp"
#include "softgait/sim.hpp"

namespace fs = std::filesystem;
using namespace softgait;

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "softgait_cli_out.txt";
    const std::string command = std::string(SOFTGAIT_CLI_PATH) + " " + args +
                                " > " + out.string() + " 2>&1";
    const int status = std::system(command.c_str());
    std::ifstream in(out);
    std::ostringstream buf;
    buf << in.rdbuf();
    fs::remove(out);
    return {WEXITSTATUS(status), buf.str()};
}

std::string data_env(const std::string& name) {
    return std::string(SOFTGAIT_DATA_DIR) + "/" + name;
}

} // namespace

TEST_CASE("cli optimize names the inching winner on I-shape") {
    const auto result = run_cli("optimize --env " + data_env("ishape_table.env") +
                                " --task +x");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("winner: 01→10→11→01") != std::string::npos);
    CHECK(result.output.find("inch (S_I1)") != std::string::npos);
    CHECK(result.output.find("objective=15") != std::string::npos);
}

TEST_CASE("cli optimize rotation tasks on the tabletop environments") {
    auto result = run_cli("optimize --env " + data_env("ishape_table.env") +
                          " --task +theta");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("hop (S_H)") != std::string::npos);
    CHECK(result.output.find("objective=30") != std::string::npos);

    result = run_cli("optimize --env " + data_env("simples_table.env") +
                     " --task -theta");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("hop (S_H)") != std::string::npos);
    CHECK(result.output.find("J_theta=-30") != std::string::npos);
    CHECK(result.output.find("objective=30") != std::string::npos);
}

TEST_CASE("cli optimize writes machine-readable JSON that reloads") {
    const fs::path json_path = fs::temp_directory_path() / "softgait_opt.json";
    const auto result = run_cli("optimize --env " + data_env("ishape_table.env") +
                                " --task +x --json " + json_path.string());
    REQUIRE(result.exit_code == 0);
    std::ifstream in(json_path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    fs::remove(json_path);
    CHECK(buf.str().find("\"family\": \"inch (S_I1)\"") != std::string::npos);
    CHECK(buf.str().find("\"objective\": 15") != std::string::npos);
}

TEST_CASE("cli circuits lists 24 sequences for four states") {
    const auto result = run_cli("circuits --states 4");
    CHECK(result.exit_code == 0);
    int lines = 0;
    std::istringstream stream(result.output);
    std::string line;
    while (std::getline(stream, line))
        if (line.find("→") != std::string::npos) ++lines;
    CHECK(lines == 24);
}

TEST_CASE("cli simulate hop for three cycles returns to the origin") {
    const fs::path traj = fs::temp_directory_path() / "softgait_traj.csv";
    const auto result = run_cli("simulate --env " + data_env("ishape_table.env") +
                                " --gait 00-11-00 --cycles 3 --sigma 0 --out " +
                                traj.string());
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.find("dx=0 mm, dy=0 mm, dtheta=90 deg") !=
          std::string::npos);

    std::ifstream in(traj);
    std::string line, last;
    std::getline(in, line);
    CHECK(line == "step,from,to,x_mm,y_mm,theta_deg");
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    fs::remove(traj);
    CHECK(last == "6,11,00,0,0,90");
}

TEST_CASE("cli simulate with zero cycles emits only the origin row") {
    const auto result = run_cli("simulate --env " + data_env("ishape_table.env") +
                                " --gait 00-11-00 --cycles 0");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("0,,,0,0,0") != std::string::npos);
    CHECK(result.output.find("\n1,") == std::string::npos);
}

TEST_CASE("cli simulate rejects unknown state labels") {
    const auto result = run_cli("simulate --env " + data_env("ishape_table.env") +
                                " --gait 00-21-00");
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("21") != std::string::npos);
}

TEST_CASE("cli learn reproduces a canned environment from its samples") {
    const fs::path obs_path = fs::temp_directory_path() / "softgait_obs.csv";
    const fs::path env_path = fs::temp_directory_path() / "softgait_learned.env";

    const auto truth = load_environment(data_env("simples_table.env"));
    const auto env = EnvironmentModel::canned(truth);
    std::mt19937_64 rng(1);
    std::vector<TransitionObservation> observations;
    for (int rep = 0; rep < 20; ++rep)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j)
                    observations.push_back(sample_transition(env, i, j, rng));
    {
        std::ofstream out(obs_path);
        write_observations_csv(out, observations, truth.spec);
    }

    const auto result = run_cli("learn --obs " + obs_path.string() + " --out " +
                                env_path.string());
    REQUIRE(result.exit_code == 0);

    const auto learned = load_environment(env_path.string());
    fs::remove(obs_path);
    fs::remove(env_path);
    CHECK(learned.t_x == truth.t_x);
    CHECK(learned.t_y == truth.t_y);
    CHECK(learned.t_theta == truth.t_theta);
}

TEST_CASE("cli learn flags unobserved pairs on an empty CSV") {
    const fs::path obs_path = fs::temp_directory_path() / "softgait_empty.csv";
    const fs::path env_path = fs::temp_directory_path() / "softgait_empty.env";
    {
        std::ofstream out(obs_path);
        out << "from,to,dx_mm,dy_mm,dtheta_deg\n";
    }
    const auto result = run_cli("learn --obs " + obs_path.string() + " --out " +
                                env_path.string());
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("unobserved") != std::string::npos);
    const auto learned = load_environment(env_path.string());
    fs::remove(obs_path);
    fs::remove(env_path);
    CHECK(learned.t_x == RewardTable(4));
}

TEST_CASE("cli learn rejects invalid labels with the offending row") {
    const fs::path obs_path = fs::temp_directory_path() / "softgait_bad.csv";
    {
        std::ofstream out(obs_path);
        out << "from,to,dx_mm,dy_mm,dtheta_deg\n20,11,1,0,0\n";
    }
    const auto result = run_cli("learn --obs " + obs_path.string() +
                                " --out /dev/null");
    fs::remove(obs_path);
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("line 2") != std::string::npos);
}

TEST_CASE("cli capacity errors exit with code 2") {
    const auto result = run_cli("circuits --states 6 --limit 10");
    CHECK(result.exit_code == 2);
}

TEST_CASE("cli runs are byte-identical for identical inputs and seed") {
    const std::string args = "simulate --env " + data_env("simples_table.env") +
                             " --gait 10-11-01-10 --cycles 5 --sigma 0.5 "
                             "--seed 4242";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("cli report summarizes an environment") {
    const auto result = run_cli("report --env " + data_env("midlines_carpet.env"));
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("P=2 M=2 K=4") != std::string::npos);
    CHECK(result.output.find("crawl (S_C2)") != std::string::npos);
    CHECK(result.output.find("reversal-antisymmetric: yes") != std::string::npos);
}
