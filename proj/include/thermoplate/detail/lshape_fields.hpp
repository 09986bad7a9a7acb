#pragma once

// Generated by scripts/generate_lshape.py; do not edit by hand.

#include <cmath>
#include <numbers>

namespace thermoplate::detail {

/// Spatial factors of the L-shape exact solution and their derivatives.
struct LShapeSpatial {
    double s, s_x, s_y, s_xx, s_xy, s_yy, lap_s, bilap_s;
    double r, r_x, r_y, lap_r;
};

inline LShapeSpatial lshape_spatial(double x, double y) {
    using std::atan2; using std::cos; using std::pow; using std::sin; using std::sqrt;
    LShapeSpatial out{};
    const double x0 = pow(x, 2);
    const double x1 = pow(y, 2);
    const double x2 = x0 + x1;
    const double x3 = pow(x2, 0.77224185);
    const double x4 = atan2(y, x);
    const double x5 = 0.4555163*x4 + 0.22775815*std::numbers::pi;
    const double x6 = sin(x5);
    const double x7 = 1.5444837*x4 + 0.77224185*std::numbers::pi;
    const double x8 = sin(x7);
    const double x9 = cos(x5);
    const double x10 = cos(x7);
    const double x11 = -1.2982884446311789*x10 + 2.3906230454078224*x6 - 0.70506912072876086*x8 + 1.2982884446311789*x9;
    const double x12 = x11*x3;
    const double x13 = x1 - 1.0;
    const double x14 = pow(x13, 2);
    const double x15 = x0 - 1.0;
    const double x16 = pow(x15, 2);
    const double x17 = x14*x16;
    const double x18 = 4.0*x12;
    const double x19 = pow(x2, -0.22775815);
    const double x20 = 0.59139154863114946*x6;
    const double x21 = 2.0051853406312082*x8;
    const double x22 = 1.0889677643389033*x9;
    const double x23 = 1.0889677643389033*x10;
    const double x24 = x20 - x21 - x22 + x23;
    const double x25 = x19*x24;
    const double x26 = x15*y;
    const double x27 = x25*x26;
    const double x28 = x11*x19;
    const double x29 = 1.5444837*x28;
    const double x30 = x*x15;
    const double x31 = x14*x15;
    const double x32 = x13*y;
    const double x33 = x13*x25;
    const double x34 = x*x33;
    const double x35 = x13*x16;
    const double x36 = 8.0*x12;
    const double x37 = x0*x36;
    const double x38 = 8.0*x;
    const double x39 = 12.3558696*x28;
    const double x40 = x0*x39;
    const double x41 = pow(x2, -1.22775815);
    const double x42 = x16*x41;
    const double x43 = x24*x42;
    const double x44 = x*y;
    const double x45 = 3.0889674*x44;
    const double x46 = 0.70353750043431*x11;
    const double x47 = x0*x46;
    const double x48 = 0.26938849008373126*x9;
    const double x49 = x48*y;
    const double x50 = 0.49604256683092916*x6;
    const double x51 = x50*y;
    const double x52 = 3.0969760740838489*x10;
    const double x53 = x52*y;
    const double x54 = 1.6818929618468774*x8;
    const double x55 = x54*y;
    const double x56 = 1.1827830972622989*x6;
    const double x57 = 2.1779355286778065*x10;
    const double x58 = 4.0103706812624165*x8;
    const double x59 = 2.1779355286778065*x9;
    const double x60 = x*x56 + x*x57 - x*x58 - x*x59;
    const double x61 = x49 + x51 - x53 - x55 + x60;
    const double x62 = x61*y;
    const double x63 = 16.0*x44;
    const double x64 = x*x26;
    const double x65 = 6.1779348*x28;
    const double x66 = x*x32;
    const double x67 = x1*x15;
    const double x68 = x13*x15;
    const double x69 = x41*x68;
    const double x70 = x24*x41;
    const double x71 = 1.5444837*x70;
    const double x72 = x0*x68;
    const double x73 = x1*x68;
    const double x74 = 1.0/x2;
    const double x75 = x1*x74;
    const double x76 = x*x74;
    const double x77 = x49*x76 + x51*x76 - x53*x76 - x55*x76;
    const double x78 = x24 - x56*x75 - x57*x75 + x58*x75 + x59*x75 + x77;
    const double x79 = x19*x68;
    const double x80 = x78*x79;
    const double x81 = 8.0*y;
    const double x82 = x14*x41;
    const double x83 = x24*x82;
    const double x84 = x1*x46;
    const double x85 = x56*y;
    const double x86 = x58*y;
    const double x87 = x59*y;
    const double x88 = x57*y;
    const double x89 = x*x48 + x*x50 - x*x52 - x*x54 - x85 + x86 + x87 - x88;
    const double x90 = x*x89;
    const double x91 = 3.0889674*x17;
    const double x92 = x25*x44;
    const double x93 = 8.0*x92;
    const double x94 = x17*x41;
    const double x95 = x0*x1;
    const double x96 = 24.0*x12;
    const double x97 = 64.0*x12;
    const double x98 = 96.0*x92;
    const double x99 = pow(y, 3);
    const double x100 = pow(x, 3);
    const double x101 = x100*y;
    const double x102 = 247.117392*x28;
    const double x103 = pow(x, 4);
    const double x104 = 33.76980002084688*x11;
    const double x105 = pow(y, 4);
    const double x106 = x*x99;
    const double x107 = 197.6939136*x28;
    const double x108 = 49.4234784*x28;
    const double x109 = 98.8469568*x28;
    const double x110 = x11*x95;
    const double x111 = 11.25660000694896*x110;
    const double x112 = 5.62830000347448*x11;
    const double x113 = 148.2704352*x44*x70;
    const double x114 = 197.6939136*x68*x70;
    const double x115 = x31*x41;
    const double x116 = x0*x11;
    const double x117 = x35*x41;
    const double x118 = x103*x11;
    const double x119 = pow(x2, -2.22775815);
    const double x120 = x119*x31;
    const double x121 = 27.640764799643285*x120;
    const double x122 = x1*x11;
    const double x123 = x105*x11;
    const double x124 = x119*x35;
    const double x125 = 27.640764799643285*x124;
    const double x126 = x106*x24;
    const double x127 = 11.25660000694896*x120;
    const double x128 = 11.25660000694896*x124;
    const double x129 = x101*x24;
    const double x130 = x119*x17;
    const double x131 = 13.820382399821642*x130;
    const double x132 = x17*pow(x2, -3.22775815);
    const double x133 = 7.6971173818298055*x132;
    const double x134 = 7.8886090522101181e-31*x132;
    const double x135 = x100*x89;
    const double x136 = x61*x99;
    const double x137 = x1*x90;
    const double x138 = x0*x62;
    const double x139 = 12.3558696*x130;
    const double x140 = 1.40707500086862*x132;
    const double x141 = 4.22122500260586*x132;
    const double x142 = x0*x74;
    const double x143 = x142*x56 + x142*x57 - x142*x58 - x142*x59 - x20 + x21 + x22 - x23 + x77;
    const double x144 = 64.0*x44;
    const double x145 = 24.7117392*x44;
    const double x146 = x115*x145;
    const double x147 = x117*x145;
    const double x148 = x130*x44;
    const double x149 = 2.81415000173724*x148;
    const double x150 = x75*x9;
    const double x151 = x142*x6;
    const double x152 = x75*x8;
    const double x153 = 4.783229065712497*x152;
    const double x154 = x10*x142;
    const double x155 = x6*x75;
    const double x156 = x142*x8;
    const double x157 = x10*x75;
    const double x158 = x142*x9;
    const double x159 = x*x6;
    const double x160 = x74*y;
    const double x161 = x159*x160;
    const double x162 = x*x9;
    const double x163 = x160*x162;
    const double x164 = x8*y;
    const double x165 = x164*x76;
    const double x166 = x*x10;
    const double x167 = x160*x166;
    const double x168 = 2.976255400985575*x161 + 1.6163309405023876*x163 - 10.091357771081264*x165 - 18.581856444503093*x167;
    const double x169 = 0.22595547468532758*x150 + 4.7311323890491956*x151 + x153 + 8.7117421147112261*x154 - 0.12271084826552796*x155 - 16.041482725049666*x156 - 2.597656264717224*x157 - 8.7117421147112261*x158 + x168 - x56 - x57 + x58 + x59;
    const double x170 = 4.783229065712497*x156;
    const double x171 = 8.7117421147112261*x150 + 0.12271084826552796*x151 + 16.041482725049666*x152 + 2.597656264717224*x154 - 4.7311323890491956*x155 - 8.7117421147112261*x157 - 0.22595547468532758*x158 + x168 - x170 + x56 + x57 - x58 - x59;
    const double x172 = 6.1779348*x148;
    const double x173 = x100*x74;
    const double x174 = x173*x9;
    const double x175 = 1.9841702673237167*x6;
    const double x176 = 12.387904296335395*x10;
    const double x177 = 6.7275718473875095*x8;
    const double x178 = x9*y;
    const double x179 = x142*x178;
    const double x180 = x156*y;
    const double x181 = 6.1939521481676977*x10;
    const double x182 = x*x181;
    const double x183 = 3.3637859236937547*x8;
    const double x184 = x*x183;
    const double x185 = x10*y;
    const double x186 = x142*x185;
    const double x187 = x6*y;
    const double x188 = x142*x187;
    const double x189 = 0.53877698016746253*x9;
    const double x190 = x*x189;
    const double x191 = 0.99208513366185833*x6;
    const double x192 = x*x191;
    const double x193 = x182 + x184 - x190 - x192;
    const double x194 = x173*x175 - x173*x176 - x173*x177 + 1.0775539603349251*x174 + 8.9376975893965537*x179 + 20.824711790762163*x180 + x182*x75 + x184*x75 - 11.30939837942845*x186 - 4.8538432373147236*x188 - x190*x75 - x192*x75 + x193 + x85 - x86 - x87 + x88;
    const double x195 = x115*x38;
    const double x196 = 12.031112043787249*x8;
    const double x197 = x74*x99;
    const double x198 = 16.041482725049666*x8;
    const double x199 = x197*x9;
    const double x200 = 4.7311323890491956*x6;
    const double x201 = x10*x197;
    const double x202 = x159*x75;
    const double x203 = x162*x75;
    const double x204 = x*x152;
    const double x205 = x166*x75;
    const double x206 = -x170*y - 6.5338065860334196*x178 - 0.22595547468532758*x179 + 6.5338065860334196*x185 + 2.597656264717224*x186 + 3.5483492917868967*x187 + 0.12271084826552796*x188 + x193 - x196*y + x197*x198 - x197*x200 + 8.7117421147112261*x199 - 8.7117421147112261*x201 + 2.976255400985575*x202 + 1.6163309405023876*x203 - 10.091357771081264*x204 - 18.581856444503093*x205;
    const double x207 = x191*y;
    const double x208 = x183*y;
    const double x209 = x189*y;
    const double x210 = x181*y;
    const double x211 = x10*x173;
    const double x212 = x*x153 + x*x196 - 3.5483492917868967*x159 + 6.5338065860334196*x162 - 6.5338065860334196*x166 - x173*x198 + x173*x200 - 8.7117421147112261*x174 + 1.6163309405023876*x179 - 10.091357771081264*x180 - 18.581856444503093*x186 + 2.976255400985575*x188 - 0.12271084826552796*x202 + 0.22595547468532758*x203 - 2.597656264717224*x205 - x207 + x208 - x209 + x210 + 8.7117421147112261*x211;
    const double x213 = x117*x81;
    const double x214 = x142*x207 - x142*x208 + x142*x209 - x142*x210 - x175*x197 + x176*x197 + x177*x197 - 1.0775539603349251*x199 - 4.8538432373147236*x202 + 8.9376975893965537*x203 + 20.824711790762163*x204 - 11.30939837942845*x205 + x207 - x208 + x209 - x210 + x60;
    const double x215 = x119*x91;
    const double x216 = x*x215;
    const double x217 = x215*y;
    const double x218 = 13.455143694775019*x8;
    const double x219 = 24.775808592670791*x10;
    const double x220 = 48.124448175148998*x8;
    const double x221 = 26.135226344133678*y;
    const double x222 = 0.10292640179340408*x6;
    const double x223 = 4.0120377590586376*x8;
    const double x224 = 28.386794334295174*x6;
    const double x225 = 96.248896350297996*x8;
    const double x226 = 52.270452688267357*x197;
    const double x227 = pow(x2, -2);
    const double x228 = x105*x227;
    const double x229 = 40.365431084325057*x8;
    const double x230 = 74.327425778012372*x10;
    const double x231 = 61.939521481676977*x10;
    const double x232 = 11.9050216039423*x6;
    const double x233 = 6.4653237620095503*x9;
    const double x234 = x227*x95;
    const double x235 = 10.023777738411987*x234*x6;
    const double x236 = x100*x227;
    const double x237 = x187*x236;
    const double x238 = x185*x236;
    const double x239 = 5.4436665932464*x234*x9;
    const double x240 = x227*x99;
    const double x241 = x162*x240;
    const double x242 = 144.08118700742297*x8;
    const double x243 = x*x240;
    const double x244 = 37.649896995996185*x234*x8;
    const double x245 = x178*x236;
    const double x246 = x166*x240;
    const double x247 = 69.327140807036157*x10*x234;
    const double x248 = x159*x240;
    const double x249 = 14.684240560209699*x161 - 27.039048242874989*x163 - 67.257364437998986*x165 + 36.525851403002574*x167;
    const double x250 = x103*x227;
    const double x251 = (2.0/3.0)*x4 + (1.0/3.0)*std::numbers::pi;
    const double x252 = sin(x251);
    const double x253 = pow(x2, 0.33333333333333333);
    const double x254 = x252*x253;
    const double x255 = x*x252;
    const double x256 = 2.0*x253;
    const double x257 = pow(x2, -0.66666666666666667);
    const double x258 = 0.66666666666666667*x257;
    const double x259 = cos(x251);
    const double x260 = x258*x259;
    const double x261 = x252*y;
    const double x262 = x*x13;
    const double x263 = 9.0*x254;
    const double x264 = 12.0*x257*x259*x44;
    const double x265 = x252*x257;
    const double x266 = 12.0*x265;
    const double x267 = pow(x2, -1.6666666666666667);
    const double x268 = 4.0*x259*x267;
    const double x269 = 4.0*x74;
    const double x270 = 3.0*x259;
    const double x271 = 2.0*x267;
    out.s = x12*x17;
    out.s_x = x31*(x*x18 + x27 + x29*x30);
    out.s_y = x35*(x18*y + x29*x32 - x34);
    out.s_xx = x14*(x15*x18 + x15*x40 + x16*x29 + x27*x38 + x37 - x42*x47 - x42*x62 + x43*x45);
    out.s_xy = x68*(-4.0*x0*x33 + x12*x63 + 4.0*x25*x67 - x44*x46*x69 + x64*x65 + x65*x66 - x71*x72 + x71*x73 + x80);
    out.s_yy = x16*(12.3558696*x1*x11*x13*x19 + 8.0*x1*x11*x3 + 4.0*x11*x13*x3 + 1.5444837*x11*x14*x19 - x34*x81 - x45*x83 - x82*x84 - x82*x90);
    out.lap_s = x1*x16*x36 + x1*x35*x39 + x14*x37 + x18*x31 + x18*x35 + x28*x91 + x31*x40 + x31*x93 - x35*x93 - x47*x94 - x62*x94 - x84*x94 - x90*x94;
    out.bilap_s = x*x130*(-x*x218 - x*x219 - x10*x221 + x10*x226 + 3.9683405346474333*x159 + 2.1551079206698501*x162 + x173*x222 - x173*x223 + 0.055896791571774712*x174 + 2.7114656962239309*x179 + 57.398748788549964*x180 - 31.171875176606688*x186 - 14.193397167147587*x187 - 1.4725301791863355*x188 + x197*x224 - x197*x225 - 21.825872940560883*x202 - 11.853093563684176*x203 + 74.003290321262604*x204 + 136.26694725968935*x205 - 7.3876193253591805*x211 + x220*y + x221*x9 - x226*x9) + x0*x102*x14 + x0*x107*x67 - x0*x112*x117 + x0*x13*x97 + x1*x102*x16 - x1*x112*x115 - x101*x114 - 128.0*x101*x33 + 98.8469568*x101*x83 - x103*x104*x82 - x104*x105*x42 + x106*x114 - 98.8469568*x106*x43 + x107*x13*x95 + x108*x31 + x108*x35 + x109*x72 + x109*x73 + x110*x121 + x110*x125 - 15.394234763659611*x110*x132 - 90.05280005559168*x110*x69 - x111*x42 - x111*x82 - x112*x94 + x113*x31 - x113*x35 - 61.91130003821928*x115*x116 + x115*x169*x63 - 24.0*x115*x62 - 8.0*x115*x90 + x116*x131 - 61.91130003821928*x117*x122 + x117*x171*x63 - 8.0*x117*x62 - 24.0*x117*x90 + x118*x121 - x118*x133 + 32.0*x12*x68 + 128.0*x12*x95 - 24.7117392*x120*x135 - 74.1352176*x120*x138 + x122*x131 + x123*x125 - x123*x133 - 24.7117392*x124*x136 - 74.1352176*x124*x137 - x126*x127 + x126*x128 - x126*x134 - x127*x129 + x128*x129 + x129*x134 - x130*y*(x*x220 - 14.193397167147587*x159 + 26.135226344133678*x162 - 26.135226344133678*x166 + x173*x224 - x173*x225 - 52.270452688267357*x174 - 2.1551079206698501*x178 + 11.853093563684176*x179 - 74.003290321262604*x180 - 136.26694725968935*x186 - 3.9683405346474333*x187 + 21.825872940560883*x188 - x197*x222 + x197*x223 - 0.055896791571774712*x199 + 7.3876193253591805*x201 - 1.4725301791863355*x202 + 2.7114656962239309*x203 + 57.398748788549964*x204 - 31.171875176606688*x205 + 52.270452688267357*x211 + x218*y + x219*y) + x135*x140 - 16.0*x135*x82 + x136*x140 - 16.0*x136*x42 + x137*x141 - 48.0*x137*x42 + x138*x141 - 48.0*x138*x82 - x139*x62 - x139*x90 + x14*x96 + x14*x98 + x143*x144*x79 + x143*x146 + x143*x147 - x143*x149 + x144*x80 + x146*x78 + x147*x78 - x149*x78 + x16*x96 - x16*x98 + x169*x172 + x171*x172 + x194*x195 + x194*x216 - x195*x206 - x206*x216 - x212*x213 - x212*x217 - x213*x214 - x214*x217 + 128.0*x25*x30*x99 + x67*x97 + x94*(x142*x176 + 5.3877698016746253*x150 - 1.9841702673237167*x151 - 33.637859236937547*x152 + 9.9208513366185832*x155 + 6.7275718473875095*x156 - 1.0775539603349251*x158 - 9.566458131424994*x164*x236 + x181 + x183 - x189 - x191 + x228*x229 + x228*x230 - x228*x232 - x228*x233 - x231*x75 + x235 + 0.24542169653105591*x237 + 5.195312529434448*x238 + x239 + 54.530007435120633*x241 + x242*x243 - x244 - 0.45191094937065516*x245 - 78.247015335439597*x246 - x247 - 29.613902816950453*x248 + x249) - x94*(x142*x231 + 1.0775539603349251*x150 - 9.9208513366185832*x151 - 6.7275718473875095*x152 + 1.9841702673237167*x155 + 33.637859236937547*x156 - 5.3877698016746253*x158 - x176*x75 - x181 - x183 + x189 + x191 - x229*x250 - x230*x250 + x232*x250 + x233*x250 - x235 + x236*x242*y - 29.613902816950453*x237 - 78.247015335439597*x238 - x239 - 0.45191094937065516*x241 - 9.566458131424994*x243*x8 + x244 + 54.530007435120633*x245 + 5.195312529434448*x246 + x247 + 0.24542169653105591*x248 + x249);
    out.r = x254*x68;
    out.r_x = x13*(x15*x255*x258 + x255*x256 - x26*x260);
    out.r_y = x15*(x13*x258*x261 + x256*x261 + x260*x262);
    out.lap_r = 0.22222222222222222*(x0 - 1)*(x1*x266 - x13*x265*(x1*x269 - 3.0) - x262*x271*(x255 + x270*y) + x263 + x264 + x268*x66) + 0.22222222222222222*(x1 - 1)*(x0*x266 - x15*x265*(x0*x269 - 3.0) + x26*x271*(x*x270 - x261) + x263 - x264 - x268*x64);
    return out;
}

}  // namespace thermoplate::detail
