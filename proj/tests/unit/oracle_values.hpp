#pragma once

// Reference values computed at 50 significant digits by
// tests/oracles/oracles.py and frozen here.

#include <array>

namespace oracle {

inline constexpr std::array<double, 14> kGridD = {-2.0 / 3.0, -0.5, -1.0 / 3.0, 0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0,
                                                  1.0,        1.5,  2.0,        2.5, 3.0,       4.0, 5.0};
inline constexpr std::array<double, 10> kGridLambda = {0.05, 0.1, 0.5, 1.0, 1.5, 2.0, 3.0, 10.0, 20.0, 50.0};

inline constexpr double kAbsRho[14][10] = {
    {0.993345238680737, 0.986736915068939, 0.935700605328596, 0.877231545439262, 0.825871209776936, 0.782779534883335, 0.724950535527283, 0.926208599005846, 0.97424984404078, 0.990387542364772},
    {0.994215039603673, 0.988494672709005, 0.945208898567516, 0.897968364817805, 0.859304292323821, 0.829932381575273, 0.799799486298122, 0.949179916405944, 0.979489714942901, 0.99225666614974},
    {0.995092335695783, 0.990262865073566, 0.954556628502633, 0.917690822961025, 0.88989801497033, 0.871193822469062, 0.85849531054583, 0.963177583444862, 0.984053422544825, 0.993915042958595},
    {0.996814050666565, 0.993715729361805, 0.972053000276398, 0.952483188953976, 0.940427978525775, 0.93462797166589, 0.935880441795033, 0.98137437278424, 0.991300007615173, 0.996613708733236},
    {0.998364178619204, 0.996797651071409, 0.986587330805327, 0.978773886753587, 0.975066348791473, 0.974115696001847, 0.976430967556242, 0.992318522756805, 0.996242595270521, 0.998510703048341},
    {0.999010822463116, 0.998072348321141, 0.992201538537875, 0.98811864517396, 0.986466886262206, 0.986271346997607, 0.987799444766753, 0.995814857354046, 0.997915251662359, 0.999166592297672},
    {0.999527388320707, 0.999083735876021, 0.996431138485057, 0.994768949264036, 0.994211224268878, 0.994242300097314, 0.994972076398274, 0.998193952967252, 0.999085729502733, 0.999631489075917},
    {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
    {0.99847956528604, 0.997159769770119, 0.991257678167436, 0.989338143873003, 0.989385564584971, 0.990017173165245, 0.991528867752854, 0.996409701064309, 0.998066618962336, 0.999191254800701},
    {0.992526053681982, 0.986504104667319, 0.964901281354015, 0.960768922830523, 0.962250448649376, 0.964901281354015, 0.970142500145332, 0.986504104667319, 0.992526053681982, 0.996811419725082},
    {0.979584175618099, 0.964737778958841, 0.922993007412631, 0.9192801283144, 0.923781397477201, 0.92940979226701, 0.939596398045503, 0.971295344175852, 0.983718537635917, 0.992926264477282},
    {0.956721836822354, 0.929252259378523, 0.869313725936963, 0.868855374740376, 0.877338483425259, 0.886426417788687, 0.9021619808929, 0.951548932079487, 0.971933821744318, 0.987597123380829},
    {0.871878199338749, 0.816345295938507, 0.741903174930785, 0.752285490093397, 0.769445642801475, 0.785683994994355, 0.812844222731503, 0.900818299945817, 0.940419913588823, 0.972834583482633},
    {0.736416769591754, 0.667503186267806, 0.606639476970578, 0.627808987479546, 0.652463670585052, 0.674866159629582, 0.712146466281753, 0.838320817155105, 0.899740190839233, 0.952953235722771},
};

inline constexpr double kLogLikelihoodMean1 = 1.1468056182452405;
inline constexpr double kLogLikelihoodSigma2_1 = 1.3555758740968724;
inline constexpr double kLogLikelihoodMean3 = 1.094585089529006;
inline constexpr double kLogLikelihoodSigma2_3 = 2.4013311461176899;
inline constexpr double kFreemanTukeyMean1 = 1.8144587489657121;
inline constexpr double kFreemanTukeySigma2_1 = 2.7343951188812689;
inline constexpr double kFreemanTukeyMean3 = 1.4008448659960605;
inline constexpr double kFreemanTukeySigma2_3 = 6.3272189724510497;

inline constexpr double kEmptyCellsRho1 = 0.83432942869628326;
inline constexpr double kEmptyCellsSigma2_1 = 0.097208874698216938;

// Exact slope of I{x = 0} at λ = 1 from the two-branch closed form.
inline constexpr double kEmptyCellsT0_05 = 1.3664879106311163;
inline constexpr double kEmptyCellsJ_05 = 0.089619695275518064;
inline constexpr double kEmptyCellsJ_06 = 0.28249435751869224;
inline constexpr double kEmptyCellsJ_02 = 0.15325975211472643;
inline constexpr double kEmptyCellsC1 = 0.41670399881776591;

// Optimal Υ_m statistic at λ = 1.
inline constexpr double kUpsilon0Omega = 1.5936242600400401;
inline constexpr double kUpsilon0ICorrected = 0.21723312416453663;
inline constexpr double kUpsilon0JCorrected = 0.089619695275518064;
inline constexpr double kUpsilon0IPrinted = 0.10366494946007474;
inline constexpr double kUpsilon0JPrinted = -0.023948479428943826;
inline constexpr double kUpsilon1Omega = 1.805312114094715;
inline constexpr double kUpsilon1JCorrected = 0.049721235385886587;
inline constexpr double kUpsilon1A0 = 1.7745799249065459;
inline constexpr double kUpsilon1A1 = 0.77838132356589011;

inline constexpr double kKullbackExample = 0.036190392133595636;

// (n, N, r, mean, variance) by enumeration of all N^n allocations.
struct CountMomentCase {
  long n, cells, r;
  double mean, variance;
};
inline constexpr std::array<CountMomentCase, 5> kCountMoments = {{
    {4, 3, 0, 0.59259259259259259, 0.31550068587105624},
    {4, 3, 1, 1.1851851851851852, 0.66941015089163237},
    {4, 3, 2, 0.88888888888888889, 0.54320987654320988},
    {5, 4, 1, 1.58203125, 0.9542083740234375},
    {6, 3, 2, 0.98765432098765432, 0.75293400396281055},
}};

}  // namespace oracle
