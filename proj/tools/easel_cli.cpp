// easel: run the robot-artist economy, paint a single topic, or replay a log.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "easel/agent.hpp"
#include "easel/error.hpp"
#include "easel/pipeline.hpp"
#include "easel/scenario.hpp"
#include "easel/service.hpp"

namespace {

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted = true; }

void write_summary(const easel::Simulation& sim, const std::filesystem::path& out) {
    using namespace easel;
    const ClosureTerms c = economic_closure(sim.engine(), sim.agent().wallet);
    std::ofstream s(out / "summary.txt");
    s << "scenario\t" << sim.scenario().name << "\nseed\t" << sim.scenario().seed << "\nfinal_tick\t" << sim.now()
      << "\nstage\t" << stage_name(sim.agent().stage) << "\npaintings\t" << sim.agent().paintings_completed;
    int sold = 0;
    for (const auto& l : sim.engine().lots()) sold += l.state == LotState::Settled;
    s << "\nsold\t" << sold << "\nrobot_balance\t" << c.final_balance.to_token_string()
      << "\nloans_outstanding\t" << sim.engine().outstanding_loans().to_token_string()
      << "\nclosure_identity\t" << (c.holds() ? "holds" : "VIOLATED")
      << "\nlog_sha256\t" << to_hex(log_hash(sim.ledger().log())) << "\n";
    for (const auto& cyc : sim.cycles())
        s << "painting\t" << cyc.index << "\t" << format_date(cyc.topic_date) << "\t" << cyc.keyword << "\t"
          << cyc.glyphs << "\tlot " << cyc.lot << "\tcoverage " << cyc.fidelity.coverage << "\n";
}

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed, const std::filesystem::path& out,
            bool serve, const std::string& host, int port, double pace, bool exit_when_done) {
    using namespace easel;
    Scenario sc = load_scenario(scenario_path);
    if (seed) sc.seed = *seed;
    std::filesystem::create_directories(out);

    if (!serve) {
        Simulation sim(sc, out);
        try {
            sim.run();
        } catch (const Error& e) {
            write_run_outputs(sim, out);
            throw;
        }
        write_run_outputs(sim, out);
        write_summary(sim, out);
        std::cout << "run complete: " << sim.agent().paintings_completed << " paintings, log sha256 "
                  << to_hex(log_hash(sim.ledger().log())) << "\n";
        return 0;
    }

    auto owned = std::make_unique<Simulation>(sc, out);
    const Simulation* sim = owned.get();
    GatewayService service(std::move(owned), ServiceOptions{pace, 20000});
    const int bound = service.start(host, port);
    std::cout << "serving on http://" << host << ":" << bound << " at " << pace << " ticks/s" << std::endl;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    while (!g_interrupted.load()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
        if (exit_when_done && service.finished()) break;
    }
    service.stop();
    write_run_outputs(*sim, out);
    write_summary(*sim, out);
    sim->check_complete();
    return 0;
}

int cmd_pipeline(const std::string& subject, const std::filesystem::path& out, int width, int height) {
    using namespace easel;
    if (subject.empty()) throw Error(Errc::InvalidArgument, "empty keyword");
    const auto translator = FixtureTranslationClient::load(data_dir() / "fixtures" / "translations.tsv");
    const StrokeFont font = StrokeFont::load(data_dir() / "fonts" / "desk-kanji.strokes");

    Topic topic;
    bool is_date = false;
    try {
        topic.date = parse_date(subject);
        is_date = true;
    } catch (const Error&) {
    }
    if (is_date) {
        const auto trends = FixtureTrendClient::load(data_dir() / "fixtures" / "trends.tsv");
        topic = select_topic(topic.date, trends, translator);
    } else {
        topic.keyword_source = subject;
        topic.keyword_glyphs = translator.translate(subject);
    }

    PipelineConfig config;
    config.raster_width = width;
    config.raster_height = height;
    const PipelineResult r = run_pipeline(topic.keyword_glyphs, config, font);
    write_artifacts(r, out);
    std::printf("keyword %s -> %s\nstrokes %zu, waypoints %zu, duration %.3f s\ncoverage %.4f spurious %.4f\n",
                topic.keyword_source.c_str(), topic.keyword_glyphs.c_str(), r.strokes.strokes.size(),
                r.trajectory.waypoints.size(), r.trajectory.duration(), r.fidelity.coverage, r.fidelity.spurious);
    return 0;
}

int cmd_replay(const std::filesystem::path& log_path, const std::string& nonce) {
    using namespace easel;
    std::ifstream in(log_path);
    if (!in) throw Error(Errc::IoError, "cannot open " + log_path.string());
    const auto log = read_log(in);
    LedgerConfig config;
    config.genesis_nonce = nonce;
    const Ledger ledger = Ledger::replay(log, config);
    std::cout << "events\t" << log.size() << "\nlog_sha256\t" << to_hex(log_hash(log)) << "\nstate_sha256\t"
              << to_hex(ledger.state_hash()) << "\ntotal_supply\t" << ledger.total_supply().to_token_string() << "\n";
    for (const auto& [id, bal] : ledger.balances())
        std::cout << ledger.label_of(id) << "\t" << id.hex() << "\t" << bal.to_token_string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"easel: desk-scale economically autonomous robot artist"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a scenario and write the event log, timeline and artifacts");
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    bool serve = false;
    bool exit_when_done = false;
    std::string host = "127.0.0.1";
    int port = 8080;
    double pace = 60;
    run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--serve", serve, "run paced in real time and serve the HTTP API");
    run->add_option("--host", host, "bind address in serve mode");
    run->add_option("--port", port, "port in serve mode (0 picks a free one)");
    run->add_option("--pace", pace, "simulated ticks per wall-clock second in serve mode");
    run->add_flag("--exit-when-done", exit_when_done, "stop serving once the scenario finishes");

    auto* pipe = app.add_subcommand("pipeline", "paint one keyword (or a trend date) and write all artifacts");
    std::string subject;
    std::string pipe_out = "out";
    int width = 1024, height = 768;
    pipe->add_option("subject", subject, "keyword or YYYY-MM-DD")->required();
    pipe->add_option("--out", pipe_out, "artifact directory");
    pipe->add_option("--width", width, "raster width in pixels");
    pipe->add_option("--height", height, "raster height in pixels");

    auto* replay = app.add_subcommand("replay", "rebuild balances from an event log");
    std::string log_path;
    std::string nonce = "easel-genesis-v1";
    replay->add_option("log", log_path, "events.log")->required();
    replay->add_option("--nonce", nonce, "genesis nonce used for account ids");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(scenario_path, seed, out_dir, serve, host, port, pace, exit_when_done);
        if (*pipe) return cmd_pipeline(subject, pipe_out, width, height);
        if (*replay) return cmd_replay(log_path, nonce);
    } catch (const easel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == easel::Errc::ConfigError ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
