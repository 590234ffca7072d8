#include <doctest.h>

#include "advice/nn/adam.hpp"
#include "advice/nn/qnet.hpp"
#include "advice/nn/rndnet.hpp"
#include "naive_nets.hpp"

using namespace advice;
using namespace advice::nn;

namespace {

// Relative-error comparison for gradient checks; near-zero pairs pass.
bool grad_close(double analytic, double numeric) {
    const double mag = std::max(std::abs(analytic), std::abs(numeric));
    if (mag < 1e-10) return true;
    return std::abs(analytic - numeric) / mag < 1e-4;
}

// Loss used by the finite-difference checks: sum of c .* Q over the batch.
double weighted_q_loss(const QNetwork<double>& net, const QNoise<double>& noise,
                       const Mat<double>& x, const Mat<double>& c) {
    const auto cache = forward_q(net, noise, x);
    return (cache.q.array() * c.array()).sum();
}

struct GradCheckCase {
    QNetwork<double> net;
    QNoise<double> noise;
    Mat<double> x;
    Mat<double> c;
};

// Draws a network/input pair whose pre-activations stay away from the ReLU
// kink so central differences are valid.
GradCheckCase make_case(std::uint64_t seed, bool noisy, bool zero_noise, int batch) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(derive_seed(seed, attempt));
        GradCheckCase check;
        check.net = QNetwork<double>::make(rng, 2, 5, 5, 3, noisy);
        if (noisy && !zero_noise) check.noise = QNoise<double>::gaussian(rng, check.net);
        check.x.resize(2 * 5 * 5, batch);
        fill_uniform(rng, check.x.data(), check.x.size(), -1.0, 1.0);
        check.c.resize(3, batch);
        fill_uniform(rng, check.c.data(), check.c.size(), -1.0, 1.0);
        double min_preact = 1e300;
        for (int i = 0; i < batch; ++i) {
            std::vector<double> col(check.x.col(i).data(), check.x.col(i).data() + check.x.rows());
            min_preact = std::min(min_preact, naive::q_forward(check.net, check.noise, col).second);
        }
        if (min_preact > 1e-3) return check;
    }
}

void check_gradients(GradCheckCase& check, int samples_per_tensor, Rng& pick) {
    const auto cache = forward_q(check.net, check.noise, check.x);
    auto grads = backward_q(check.net, check.noise, cache, check.c);
    auto params = named_tensors(check.net);
    auto grad_tensors = named_tensors(grads, check.net);
    REQUIRE(params.size() == grad_tensors.size());
    for (std::size_t t = 0; t < params.size(); ++t) {
        REQUIRE(params[t].size == grad_tensors[t].size);
        for (int n = 0; n < samples_per_tensor; ++n) {
            const long k = pick.uniform_int(static_cast<int>(params[t].size));
            double& p = params[t].data[k];
            const double h = 1e-5 * std::max(1.0, std::abs(p));
            const double orig = p;
            p = orig + h;
            const double lp = weighted_q_loss(check.net, check.noise, check.x, check.c);
            p = orig - h;
            const double lm = weighted_q_loss(check.net, check.noise, check.x, check.c);
            p = orig;
            const double numeric = (lp - lm) / (2 * h);
            const double analytic = grad_tensors[t].data[k];
            INFO(params[t].name << "[" << k << "]: analytic " << analytic << " numeric " << numeric);
            CHECK(grad_close(analytic, numeric));
        }
    }
}

} // namespace

TEST_CASE("noisy layer forward matches its defining expression") {
    Dense<double> layer;
    layer.mu_w = Mat<double>::Constant(1, 1, 2.0);
    layer.sigma_w = Mat<double>::Constant(1, 1, 0.5);
    layer.mu_b = Vec<double>::Constant(1, 1.0);
    layer.sigma_b = Vec<double>::Constant(1, 0.2);
    LayerNoise<double> noise;
    noise.eps_w = Mat<double>::Constant(1, 1, 1.0);
    noise.eps_b = Vec<double>::Constant(1, -1.0);

    Vec<double> x = Vec<double>::Constant(1, 3.0);
    CHECK(dense_forward(layer, noise, x)[0] == doctest::Approx(8.3));

    // suppressed noise reduces to the plain affine map, exactly
    layer.sigma_w.setZero();
    layer.sigma_b.setZero();
    CHECK(dense_forward(layer, noise, x)[0] == 2.0 * 3.0 + 1.0);

    // zero input leaves only the bias path
    layer.sigma_w.setConstant(0.5);
    layer.sigma_b.setConstant(0.2);
    x.setZero();
    CHECK(dense_forward(layer, noise, x)[0] == doctest::Approx(1.0 - 0.2));

    Vec<double> wrong(3);
    CHECK_THROWS_AS(dense_forward(layer, noise, wrong), std::invalid_argument);
}

TEST_CASE("zero noise sample makes the noisy layer deterministic") {
    Rng rng(5);
    Dense<float> layer = Dense<float>::make(rng, 7, 4, true);
    Vec<float> x(7);
    fill_uniform(rng, x.data(), x.size(), -1.0f, 1.0f);
    const Vec<float> y1 = dense_forward(layer, LayerNoise<float>::zeros(), x);
    const Vec<float> y2 = dense_forward(layer, LayerNoise<float>::zeros(), x);
    CHECK(y1 == y2);
    const Vec<float> plain = layer.mu_w * x + layer.mu_b;
    CHECK((y1 - plain).cwiseAbs().maxCoeff() == 0.0f);
}

TEST_CASE("noise sample statistics and determinism") {
    Rng rng(42);
    const long n = 100000;
    std::vector<double> draws(n);
    fill_normal(rng, draws.data(), n);
    double mean = 0, var = 0;
    for (double d : draws) mean += d;
    mean /= n;
    for (double d : draws) var += (d - mean) * (d - mean);
    var /= n;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.01);

    Rng a(7), b(7);
    const auto na = LayerNoise<float>::gaussian(a, 20, 10);
    const auto nb = LayerNoise<float>::gaussian(b, 20, 10);
    CHECK(na.eps_w == nb.eps_w);
    CHECK(na.eps_b == nb.eps_b);
}

TEST_CASE("dueling head identities") {
    Rng rng(3);
    auto net = QNetwork<double>::make(rng, 2, 5, 5, 4, true);
    const auto noise = QNoise<double>::gaussian(rng, net);
    Mat<double> x(2 * 5 * 5, 3);
    fill_uniform(rng, x.data(), x.size(), 0.0, 1.0);

    const auto base = forward_q(net, noise, x);

    // equal advantage outputs collapse q to the value estimate
    {
        auto constant_adv = net;
        constant_adv.advantage.mu_w.setZero();
        constant_adv.advantage.sigma_w.setZero();
        constant_adv.advantage.mu_b.setConstant(0.7);
        constant_adv.advantage.sigma_b.setZero();
        const auto out = forward_q(constant_adv, noise, x);
        for (int i = 0; i < 3; ++i)
            for (int a = 0; a < 4; ++a)
                CHECK(out.q(a, i) == doctest::Approx(out.value_out(0, i)).epsilon(1e-12));
    }

    // shifting every advantage output by a constant leaves q unchanged
    {
        auto shifted = net;
        shifted.advantage.mu_b.array() += 3.25;
        const auto out = forward_q(shifted, noise, x);
        CHECK((out.q - base.q).cwiseAbs().maxCoeff() < 1e-10);
    }

    // forward is a pure function of (params, noise)
    const auto again = forward_q(net, noise, x);
    CHECK(base.q == again.q);
}

TEST_CASE("optimized forward matches a straight-line reimplementation") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        Rng rng(seed);
        auto net = QNetwork<double>::make(rng, 3, 6, 7, 5, true);
        const auto noise = QNoise<double>::gaussian(rng, net);
        std::vector<double> input(3 * 6 * 7);
        fill_uniform(rng, input.data(), static_cast<long>(input.size()), -1.0, 1.0);

        const Eigen::Map<const Vec<double>> x(input.data(), static_cast<long>(input.size()));
        const auto [q, phi] = forward_q_single(net, noise, Vec<double>(x));
        const auto [naive_q, min_preact] = naive::q_forward(net, noise, input);
        REQUIRE(naive_q.size() == static_cast<std::size_t>(q.size()));
        for (int a = 0; a < q.size(); ++a) CHECK(q[a] == doctest::Approx(naive_q[a]).epsilon(1e-12));
        (void)min_preact;
        (void)phi;
    }
}

TEST_CASE("rnd network forward matches a straight-line reimplementation") {
    Rng rng(11);
    auto net = RndNetwork<double>::make(rng, 3, 9, 9, 16);
    std::vector<double> input(3 * 9 * 9);
    fill_uniform(rng, input.data(), static_cast<long>(input.size()), 0.0, 1.0);
    const Eigen::Map<const Vec<double>> x(input.data(), static_cast<long>(input.size()));
    const Vec<double> emb = rnd_embed(net, Vec<double>(x));
    const auto [naive_emb, min_preact] = naive::rnd_forward(net, input);
    for (int i = 0; i < emb.size(); ++i) CHECK(emb[i] == doctest::Approx(naive_emb[i]).epsilon(1e-12));
    (void)min_preact;
}

TEST_CASE("parameter count of the default architecture") {
    Rng rng(1);
    auto net = QNetwork<float>::make(rng, 3, 9, 9, 4, true);
    // conv 16*(3*3*3)+16, hidden (128*784)*2+128*2, value (128*1)*2+2,
    // advantage (128*4)*2+8
    CHECK(net.param_count() == 202698);
    auto plain = QNetwork<float>::make(rng, 3, 9, 9, 4, false);
    CHECK(plain.param_count() == 448 + (100352 + 128) + (128 + 1) + (512 + 4));
}

TEST_CASE("analytic gradients match central finite differences") {
    Rng pick(99);
    SUBCASE("noisy network with sampled noise") {
        auto check = make_case(101, true, false, 4);
        check_gradients(check, 25, pick);
    }
    SUBCASE("noisy network with zero noise") {
        auto check = make_case(202, true, true, 4);
        check_gradients(check, 25, pick);
    }
    SUBCASE("plain network") {
        auto check = make_case(303, false, true, 4);
        check_gradients(check, 25, pick);
    }
}

TEST_CASE("gradient of the rnd embedding objective") {
    RndNetwork<double> net;
    Mat<double> x, c;
    // reject draws whose pre-activations sit near a ReLU kink
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(derive_seed(400, attempt));
        net = RndNetwork<double>::make(rng, 2, 5, 5, 8);
        x.resize(2 * 5 * 5, 3);
        fill_uniform(rng, x.data(), x.size(), -1.0, 1.0);
        c.resize(8, 3);
        fill_uniform(rng, c.data(), c.size(), -1.0, 1.0);
        double min_preact = 1e300;
        for (int i = 0; i < 3; ++i) {
            std::vector<double> col(x.col(i).data(), x.col(i).data() + x.rows());
            min_preact = std::min(min_preact, naive::rnd_forward(net, col).second);
        }
        if (min_preact > 1e-3) break;
    }

    const auto loss_of = [&]() { return (forward_rnd(net, x).embedding.array() * c.array()).sum(); };
    const auto cache = forward_rnd(net, x);
    auto grads = backward_rnd(net, cache, c);
    auto params = named_tensors(net);
    auto grad_tensors = named_tensors(grads);
    Rng pick(7);
    for (std::size_t t = 0; t < params.size(); ++t) {
        for (int n = 0; n < 25; ++n) {
            const long k = pick.uniform_int(static_cast<int>(params[t].size));
            double& p = params[t].data[k];
            const double h = 1e-5 * std::max(1.0, std::abs(p));
            const double orig = p;
            p = orig + h;
            const double lp = loss_of();
            p = orig - h;
            const double lm = loss_of();
            p = orig;
            CHECK(grad_close(grad_tensors[t].data[k], (lp - lm) / (2 * h)));
        }
    }
}

TEST_CASE("gradient linearity and unused-parameter gradients") {
    auto check = make_case(707, true, false, 3);
    const auto cache = forward_q(check.net, check.noise, check.x);
    auto g1 = backward_q(check.net, check.noise, cache, check.c);
    const Mat<double> doubled = 2.0 * check.c;
    auto g2 = backward_q(check.net, check.noise, cache, doubled);
    auto t1 = named_tensors(g1, check.net);
    auto t2 = named_tensors(g2, check.net);
    for (std::size_t t = 0; t < t1.size(); ++t)
        for (long k = 0; k < t1[t].size; ++k)
            CHECK(t2[t].data[k] == doctest::Approx(2.0 * t1[t].data[k]).epsilon(1e-12));

    // a loss that ignores the output has zero gradient everywhere
    const Mat<double> zero_dq = Mat<double>::Zero(3, 3);
    auto g0 = backward_q(check.net, check.noise, cache, zero_dq);
    for (auto& tensor : named_tensors(g0, check.net))
        for (long k = 0; k < tensor.size; ++k) CHECK(tensor.data[k] == 0.0);

    // with the zero noise sample, sigma tensors receive zero gradient
    auto zero_case = make_case(808, true, true, 3);
    const auto zcache = forward_q(zero_case.net, zero_case.noise, zero_case.x);
    auto zg = backward_q(zero_case.net, zero_case.noise, zcache, zero_case.c);
    CHECK(zg.hidden.sigma_w.cwiseAbs().maxCoeff() == 0.0);
    CHECK(zg.value.sigma_b.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("adam optimizer") {
    SUBCASE("zero gradient leaves fresh parameters unchanged") {
        double p = 1.25, g = 0.0;
        Adam<double> adam(0.1);
        for (int i = 0; i < 5; ++i) adam.step({{"p", &p, 1}}, {{"g", &g, 1}});
        CHECK(p == 1.25);
    }
    SUBCASE("scalar trajectory matches a hand-stepped reference") {
        double p = 1.0, g = 0.5;
        Adam<double> adam(0.1);
        double ref_p = 1.0, m = 0.0, v = 0.0;
        for (int t = 1; t <= 20; ++t) {
            adam.step({{"p", &p, 1}}, {{"g", &g, 1}});
            m = 0.9 * m + 0.1 * g;
            v = 0.999 * v + 0.001 * g * g;
            const double m_hat = m / (1.0 - std::pow(0.9, t));
            const double v_hat = v / (1.0 - std::pow(0.999, t));
            ref_p -= 0.1 * m_hat / (std::sqrt(v_hat) + 1e-8);
            CHECK(p == doctest::Approx(ref_p).epsilon(1e-12));
        }
    }
    SUBCASE("converges on a convex quadratic") {
        double p = 0.0;
        Adam<double> adam(0.1);
        for (int t = 0; t < 5000; ++t) {
            double g = 2.0 * (p - 3.0);
            adam.step({{"p", &p, 1}}, {{"g", &g, 1}});
        }
        CHECK((p - 3.0) * (p - 3.0) < 1e-6);
    }
}
