"""Frozen numeric tables used by the compute kernels and specfun.

The double-double pairs (hi, lo) split transcendental constants so that
hi + lo reproduces the value to roughly 32 digits.  UK/VK are the Airy
asymptotic-series coefficients u_k = Gamma(3k+1/2)/(54^k k! Gamma(k+1/2))
and v_k = -(6k+1)/(6k-1) u_k.  AIRY_ZEROS holds the first ten negative
zeros of Ai, generated once by bisection on an independent
extended-precision series evaluation and embedded here.
"""
import numpy as np

AI0 = (0.3550280538878172, 2.05233632436212e-17)          # Ai(0)
AIP0 = (-0.2588194037928068, 2.522243111610832e-17)       # Ai'(0)
TWOPI = (6.283185307179586, 2.4492935982947064e-16)
PIO4 = (0.7853981633974483, 3.061616997868383e-17)
LN2 = (0.6931471805599453, 2.3190468138462996e-17)

UK = np.array([
    1.0,
    0.06944444444444445,
    0.037133487654320986,
    0.03799305912780064,
    0.05764919041266972,
    0.11609906402551541,
    0.2915913992307505,
    0.8776669695100169,
    3.079453030173167,
    12.341573332345238,
    55.62278536591708,
    278.46508077760257,
    1533.1694320127956,
    9207.206599726414,
    59892.51356587907,
    419524.87511655106,
    3148257.4178668265,
    25198919.871602368,
    214288036.96368033,
    1929375549.182493,
    18335766937.890568,
    183418303528.83255,
    1926471158970.4465,
    21196999388647.65,
    243826826879716.03,
    2926599219297925.0,
    3.659030701264313e+16,
])
VK = np.array([
    1.0,
    -0.09722222222222222,
    -0.04388503086419753,
    -0.04246283078989483,
    -0.06266216349203231,
    -0.12410589602727509,
    -0.3082537649010791,
    -0.9204799924129445,
    -3.210493584648621,
    -12.807293080735626,
    -57.50830351391427,
    -287.0332371092211,
    -1576.3573033370997,
    -9446.354823095931,
    -61335.706663852055,
    -428952.4004000691,
    -3214536.5214008647,
    -25697908.383911327,
    -218293420.83216032,
    -1963523788.9910328,
    -18643931088.107216,
    -186352996385.29388,
    -1955882932389.8428,
    -21506444635197.25,
    -247236992290621.16,
    -2965882430295212.5,
    -3.706244000635466e+16,
])

# term-to-term ratios, so asymptotic sums need one multiply per term
UKR = np.empty(27)
UKR[0] = 1.0
UKR[1:] = UK[1:]/UK[:-1]
VKR = np.empty(27)
VKR[0] = 1.0
VKR[1:] = VK[1:]/VK[:-1]

AIRY_ZEROS = np.array([
    -2.338107410459767,
    -4.08794944413097,
    -5.520559828095551,
    -6.786708090071759,
    -7.944133587120853,
    -9.02265085334098,
    -10.040174341558085,
    -11.008524303733262,
    -11.936015563236262,
    -12.828776752865757,
])

# Taylor coefficients of (theta - sin(theta)cos(theta))/2 at 0: theta^k, odd k
ETA_POWERS = np.arange(3, 22, 2)
ETA_COEFFS = np.array([
    1/3, -1/15, 2/315, -1/2835, 2/155925,
    -2/6081075, 4/638512875, -1/10854718875,
    2/1856156927625, -2/194896477400625,
])

# Maclaurin coefficients (theta^(2k), k = 0..9) of the Airy-type expansion
# coefficient functions near the turning point.  The closed trig forms are
# differences of pieces growing like theta^-10, so below PCF_SMALL_THETA
# cancellation wipes them out and these series take over.
PCF_SMALL_THETA = 0.1
A1_SMALL = np.array([
    -7.7777777777777777778e-3,
    -5.5592532467532467532e-3,
    -2.0933816183816183939e-3,
    -6.0062258288448764639e-4,
    -1.4496138108182926110e-4,
    -3.0954736938906811002e-5,
    -6.0278186821060656755e-6,
    -1.0964343639050670464e-6,
    -1.9263025759780076651e-7,
    -3.4737657664079741515e-8,
])
B0_SMALL = np.array([
    -4.0497462318049494582e-2,
    -9.7993859436267912815e-3,
    -1.8700992646725180535e-3,
    -3.1923851489847314912e-4,
    -5.0007744388595118694e-5,
    -7.3154737316092918503e-6,
    -1.0144517865907236504e-6,
    -1.3495768260435676011e-7,
    -1.7381665772269001079e-8,
    -2.1819452468504187762e-9,
])
B1_SMALL = np.array([
    1.4600546628204818636e-2,
    6.7564447233105614226e-3,
    2.6474419021207818616e-3,
    8.9300636600174540055e-4,
    2.8987406145898401756e-4,
    1.2448435274111130464e-4,
    7.5485438381704736252e-5,
    4.6884577821869614196e-5,
    2.4552004344558390639e-5,
    1.0267890020967950421e-5,
])
C0_SMALL = np.array([
    -7.9370052598409973738e-2,
    -3.9685026299204986869e-3,
    -4.0314947351573319994e-3,
    -6.9100430593132300368e-4,
    -1.1500432783458303221e-4,
    -1.7249056833962094839e-5,
    -2.4253396689375385497e-6,
    -3.2540396675159222712e-7,
    -4.2151531200921920767e-8,
    -5.3134367843681267429e-9,
])
D1_SMALL = np.array([
    1.0992063492063492063e-2,
    6.4977453102453102453e-3,
    2.4439656903942618228e-3,
    7.0087214813405289596e-4,
    1.6916549392539788698e-4,
    3.6138592198163543980e-5,
    7.0418881729914360987e-6,
    1.2819388567661471383e-6,
    2.2518997787545167798e-7,
    4.0229846550501628891e-8,
])
C1_SMALL = np.array([
    9.4420870833746987697e-3,
    4.7210435416873493848e-4,
    2.3946228173468865672e-3,
    1.0317788456572831351e-3,
    3.5573742041034569944e-4,
    1.2205571657871146769e-4,
    6.2251341738000001400e-5,
    4.1318224999773619189e-5,
    2.5001842671616381712e-5,
    1.2794166661249159833e-5,
])
