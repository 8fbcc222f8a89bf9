#include <doctest.h>

#include "ghzsim/bits.hpp"
#include "ghzsim/dyadic.hpp"

using namespace ghzsim;

namespace {

Dyadic random_dyadic(BitSource& src, unsigned scale) {
    mpz_class m = 0;
    for (unsigned b = 0; b < scale; ++b) {
        m <<= 1;
        m += src.next_bit();
    }
    return Dyadic::from_parts(src.next_bit() ? -1 : +1, m, scale);
}

}  // namespace

TEST_CASE("truncation drops low magnitude bits toward zero") {
    Dyadic x = Dyadic::from_parts(+1, 15, 4);  // 0.1111
    CHECK(x.truncated(3) == Dyadic::from_parts(+1, 7, 3));
    CHECK(Dyadic(0).truncated(9) == Dyadic(0));
    Dyadic neg = Dyadic::from_parts(-1, 15, 4);
    CHECK(neg.truncated(3) == Dyadic::from_parts(-1, 7, 3));
    CHECK(x.truncated(10) == x);  // re-scaling is exact
}

TEST_CASE("truncation refines one appended bit at a time") {
    PrngSource src(11);
    for (int rep = 0; rep < 200; ++rep) {
        Dyadic x = random_dyadic(src, 64);
        for (unsigned l = 1; l < 64; ++l) {
            Dyadic coarse = x.truncated(l);
            Dyadic fine = x.truncated(l + 1);
            for (unsigned i = 1; i <= l; ++i) CHECK(coarse.magnitude_bit(i) == fine.magnitude_bit(i));
        }
    }
}

TEST_CASE("truncation error stays below one unit in the last place") {
    PrngSource src(12);
    mpq_class ulp;
    for (int rep = 0; rep < 100; ++rep) {
        Dyadic x = random_dyadic(src, 50);
        unsigned l = 1 + static_cast<unsigned>(rep % 49);
        mpq_class err = abs(x.truncated(l).to_rational() - x.to_rational());
        mpq_class bound(1);
        mpz_mul_2exp(bound.get_den().get_mpz_t(), bound.get_den().get_mpz_t(), l);
        CHECK(err < bound);
    }
}

TEST_CASE("mul_truncate matches the worked fixed-point products") {
    Dyadic a = Dyadic::from_parts(+1, 7, 3);   // 0.111
    Dyadic b = Dyadic::from_parts(+1, 4, 3);   // 0.100
    CHECK(mul_truncate(a, b, 3) == Dyadic::from_parts(+1, 3, 3));  // 0.011
    Dyadic c = Dyadic::from_parts(+1, 15, 4);  // 0.1111
    Dyadic d = Dyadic::from_parts(+1, 9, 4);   // 0.1001
    CHECK(mul_truncate(c, d, 4) == Dyadic::from_parts(+1, 8, 4));  // 0.1000
    CHECK(mul_truncate(Dyadic(1), d, 4) == d);
}

TEST_CASE("mul_truncate keeps unit-box inputs inside the unit box") {
    PrngSource src(13);
    for (int rep = 0; rep < 200; ++rep) {
        unsigned l = 1 + static_cast<unsigned>(rep % 30);
        Dyadic a = random_dyadic(src, l);
        Dyadic b = random_dyadic(src, l);
        CHECK(mul_truncate(a, b, l).cmp_abs(Dyadic(1)) <= 0);
    }
}

TEST_CASE("dyadic arithmetic agrees with rational arithmetic") {
    PrngSource src(14);
    for (int rep = 0; rep < 200; ++rep) {
        Dyadic a = random_dyadic(src, 20);
        Dyadic b = random_dyadic(src, 13);
        CHECK((a + b).to_rational() == a.to_rational() + b.to_rational());
        CHECK((a - b).to_rational() == a.to_rational() - b.to_rational());
        CHECK((a * b).to_rational() == a.to_rational() * b.to_rational());
        CHECK((-a).to_rational() == -a.to_rational());
        int ref = cmp(a.to_rational(), b.to_rational());
        CHECK(a.cmp(b) == (ref > 0) - (ref < 0));
    }
}

TEST_CASE("magnitude bits index the binary expansion") {
    Dyadic x = Dyadic::from_parts(+1, 0b1011, 4);  // 0.1011
    CHECK(x.magnitude_bit(1) == 1);
    CHECK(x.magnitude_bit(2) == 0);
    CHECK(x.magnitude_bit(3) == 1);
    CHECK(x.magnitude_bit(4) == 1);
    CHECK(x.magnitude_bit(5) == 0);  // beyond the stored scale
}

TEST_CASE("from_signed places the sign on the magnitude") {
    Dyadic x = Dyadic::from_signed(mpz_class(-5), 3);
    CHECK(x.sign() == -1);
    CHECK(x.magnitude() == 5);
    CHECK(x.to_rational() == mpq_class(-5, 8));
}
