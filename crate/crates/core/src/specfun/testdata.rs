//! Frozen reference values from `scripts/gen_oracles.py` (mpmath, 50 digits).
#![allow(clippy::excessive_precision)]

use num_complex::Complex64;

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const BESSEL_J: &[(Complex64, &[Complex64])] = &[
    (c(2.7000000000000002, 0.40000000000000002), &[c(-0.16722596191322115, -0.17951288464447691), c(0.46322901985003388, -0.12537080680972512), c(0.48952664134173158, 0.03889737153675306), c(0.2547741373243964, 0.076625704319814055), c(0.089163655976761732, 0.045650075497131005), c(0.023348709747935474, 0.0174303938831916), c(0.0048144297584092953, 0.0049842595168866168), c(0.00080054795052317254, 0.0011442028291254142), c(0.00010748277486295154, 0.00021947181439001242), c(0.000011247416748718149, 0.000036104905441786642), c(0.0000007829665019566237, 0.0000051881861308010045), c(-0.0000000010167283066447294, 0.0000006599695981598322), c(-0.000000011511629152351759, 0.000000075054317493291321)]),
    (c(0.29999999999999999, -0.20000000000000001), &[c(0.98731494572800507, 0.029812142560859499), c(0.15054697730054616, -0.097128212582615552), c(0.0063732959133327786, -0.014874732017404579), c(-0.00017974107036925297, -0.00095672349599422804), c(-0.000030724616960329503, -0.000031357038231682423), c(-0.0000015498491238156774, -0.00000032480317934905282), c(-0.000000044160060816084331, 0.000000017747572616935439), c(-0.00000000069236248085069711, 0.000000001011759828784955), c(-0.00000000000032333907568298093, 0.000000000027629956255781131), c(0.00000000000030180714471300278, 0.00000000000046405571938263365), c(0.0000000000000091697808578556813, 0.0000000000000039407106268055537), c(0.00000000000000016087559401161134, -0.000000000000000029664057587114867), c(0.0000000000000000017635564515515951, -0.0000000000000000017119069891548351)]),
    (c(15.0, 3.0), &[c(-0.3429552398420873, -2.017553729773522), c(2.0047358030040586, -0.40624621267347668), c(0.5895560809279031, 1.914067399866562), c(-1.7554102745678495, 0.86679908028398472), c(-1.1980370265090771, -1.4456515786367333), c(0.99276035547224751, -1.4852832717377887), c(1.6440009374864424, 0.36626994861606773), c(0.32820497315056473, 1.5141061649060805), c(-1.077695367880998, 0.93363469137518518), c(-1.2420187471053965, -0.33546640598158325), c(-0.43281851092867102, -1.0340916027911513), c(0.4219715272503949, -0.87931295376895145), c(0.77989521624439547, -0.32498273713312241)]),
    (c(-4.0, 1.5), &[c(-0.89176560125906635, -0.19858593227310812), c(0.28075557416765997, -0.75352280833003295), c(0.64482790162447026, 0.48274569907515107), c(-0.68737323069043354, 0.11829548805884179), c(0.31745247805224104, -0.29933378878464701), c(-0.066077989204770695, 0.19782788204975065), c(-0.010025749343359528, -0.079950893073899042), c(0.013591408007569303, 0.022342329222995956), c(-0.0059704114643646314, -0.0042458195094833631), c(0.0017623818823888168, 0.00039862002367179148), c(-0.00039280798181928329, 0.000065822110641333423), c(0.000067716849928041552, -0.000041443552259636698), c(-0.0000086561287689724736, 0.000011568385316072505)]),
    (c(40.0, -0.5), &[c(0.0078966050784406265, 0.065678481812165629), c(0.14212691710309887, -0.0021295666050695684), c(-0.00079003864516271422, -0.065696128062003133), c(-0.14212380129438275, -0.0044400072535217934), c(-0.020516877329773261, 0.064763790524288164), c(0.13785918269877294, 0.017339457625934304), c(0.054922111381564859, -0.059998860692157194), c(-0.12116016277857042, -0.03513037808457893), c(-0.097167872049840056, 0.047175156354201128), c(0.082063247069942869, 0.053511729179901537), c(0.13378960760849636, -0.022637106528762232), c(-0.015037434133161297, -0.063992459782572884), c(-0.14161902487428211, -0.012656614067475175)]),
];

pub const HANKEL1: &[(Complex64, &[Complex64])] = &[
    (c(10.0, 1.0), &[c(-0.089019102159229209, 0.024848514040483495), c(0.020624891637719922, 0.09078456717279442), c(0.094900953318635024, -0.0072797857218651921), c(0.016671335984635921, -0.097426104223776081), c(-0.090784878727194442, -0.051587484271544515), c(-0.092666288186100391, 0.063755612026686916), c(0.0053485153772620659, 0.12388673263322467), c(0.11374017567986419, 0.082801078383806306), c(0.16378851128169115, -0.024878925561791162), c(0.14178555695461032, -0.14815993254611962), c(0.062493879470781173, -0.26443719209647138), c(-0.07039910099196867, -0.38785309724308731), c(-0.30032130875376165, -0.56505687891002265)]),
    (c(0.5, 0.10000000000000001), &[c(0.79512293638763405, -0.45652648179515362), c(0.0029182829839458251, -1.3809070174346086), c(-1.8461349383221568, -4.8568991875563764), c(-21.676108866318039, -33.139648366349584), c(-324.73892513384657, -327.50186919420488), c(-5982.0054137904134, -4006.1539542095821), c(-130122.11116394942, -53706.207197180783), c(-3244710.7469720306, -634804.26830096497), c(-90645651.752011301, 434341.46740521268), c(-2783179395.6693436, 571818552.50853093), c(-92291435757.896975, 39061449830.769506), c(-3246414735671.3719, 2211725757691.68), c(-118541421739101.31, 121003614523574.99)]),
    (c(3.1000000000000001, 0.20000000000000001), &[c(-0.22942604197903774, 0.28733810432433502), c(0.25763666461320893, 0.27912451732387997), c(0.40652418990975766, -0.11868345753026536), c(0.25489734459474782, -0.46533117279570345), c(0.026915520153192092, -0.80992137433644772), c(-0.32001333414284652, -1.6205874713275101), c(-1.3908106808872089, -4.3297869098984867), c(-6.1182919417908879, -14.724503452412842), c(-30.398047344033049, -60.117076551003363), c(-170.05971771906403, -284.19085876819451), c(-1058.9718324786895, -1519.7414659854342), c(-7263.6417825524887, -9040.9991475719258), c(-54398.102345697082, -59064.312214965278)]),
    (c(1.5, -0.29999999999999999), &[c(0.64093745843194122, 0.5811321920040706), c(0.77212119409603733, -0.44583449993391137), c(0.46327804680244288, -0.95473509086907562), c(0.90537897250975241, -1.7646257090624657), c(4.3763531621292707, -5.1358415035944444), c(26.804987503634656, -20.08445568154569), c(193.19979196571556, -89.245300681141188), c(1596.6477209728561, -369.18740807228568), c(14798.334077407608, -358.19706745219384), c(150915.9009036225, 27050.928413501288), c(1664113.7646255413, 660751.75777005743), c(19489640.676936504, 12711083.824088623), c(237338018.32935725, 233568904.08099297)]),
    (c(2.0, 2.0), &[c(0.043548858649058756, 0.044546707657355404), c(0.05493294421871961, -0.043882653906084076), c(-0.038023713492740989, -0.093954506719757247), c(-0.18691116443121785, -0.012048139320932183), c(-0.26041524213548405, 0.35624904438518574), c(0.37857876893062122, 1.2453767123622718), c(4.3203039453677165, 1.8107458141939406), c(18.01457050975435, -8.7740511058835994), c(28.021513968179912, -95.570921468926765), c(-288.21220051274176, -485.59569064254311), c(-3510.1570241669618, -792.65478411517928), c(-21225.846840897964, 14073.106890901456), c(-35829.912700813832, 194936.90030901199)]),
    (c(25.0, 0.5), &[c(0.057603112538888582, -0.077744763069713296), c(-0.076640617447585233, -0.05919063341874585), c(-0.063826577562156087, 0.073133981696678978), c(0.066666383472659602, 0.071091555169712999), c(0.080161215205351735, -0.056398701208811771), c(-0.041385858504670638, -0.089644750055892545), c(-0.097425810769441495, 0.020886093097736548), c(-0.0051594060650951027, 0.1006009800342014), c(0.095663979082046251, 0.035485692355164142), c(0.06681390773908121, -0.079123226960376074), c(-0.048716119122121165, -0.093393372965833417), c(-0.10726491660068683, 0.0052175487649414527), c(-0.045547473191294913, 0.099870087725250217)]),
    (c(6.0, -1.0), &[c(0.47108835203254228, -0.74435430716085908), c(-0.69831159426247974, -0.52706162200230168), c(-0.66907797060403292, 0.53566883006484341), c(0.20640492899879964, 0.8021897311682506), c(0.73981956673774328, 0.27831116712569225), c(0.69318560793109602, -0.28117641884567833), c(0.46025882959529846, -0.5469254658129825), c(0.37983442776126288, -0.63383784016489353), c(0.64189851349266347, -0.74833660405710874), c(1.6092370035957488, -1.0302145320945612), c(4.5565192693733628, -1.4759040284155704), c(13.966449290812763, -1.2935178468892547), c(46.038850974379295, 5.1655669637804127)]),
    (c(0.050000000000000003, 0.01), &[c(0.87315849689895385, -1.9671180385283904), c(-2.4152641656873715, -12.29547060620254), c(-188.34847722489431, -452.35664246397412), c(-21445.262098733475, -31886.700453931893), c(-3210111.9041596811, -3183891.6473019818), c(-591807821.44868238, -391024923.52570691), c(-128845406456.13886, -52432077499.885471), c(-32152905566666.848, -6152608100151.3276), c(-8987716935627381.5, 74891320241895.728), c(-2760810515272587800.0, 576139908721137650.0), c(-915769581581342870000.0, 390566006107944990000.0), c(-322172770097082350000000.0, 220660932484788790000000.0), c(-117631638830471130000000000.0, 120616930647311500000000000.0)]),
    (c(16.5, 0.20000000000000001), &[c(-0.16075850171475906, 0.0011215615108017361), c(-0.0037420835405243238, 0.16092468288084255), c(0.16054138436309368, 0.01838709238204785), c(0.042709511804029488, -0.1569395384035401), c(-0.14570457719972128, -0.075635855524709371), c(-0.11378822038386255, 0.12112916855616384), c(0.077641857209178134, 0.14987247549802737), c(0.17156772630994333, -0.012831362205187335), c(0.067777427242775241, -0.16252234990790697), c(-0.10776380669340449, -0.14553944885237747), c(-0.18724487960536546, 0.0052001324006174899), c(-0.11908995121238762, 0.15459238216107494), c(0.030979699802258569, 0.20281716720570191)]),
    (c(40.0, -2.0), &[c(0.031157155486069176, 0.93118455800844368), c(0.93106510015455303, -0.019523936875055326), c(0.015328694738285228, -0.92983646234097873), c(-0.92489846495701347, -0.073151377599165568), c(-0.15317022532338077, 0.91197167917184911), c(0.88524383966385173, 0.2535629821688773), c(0.37076765438956727, -0.83770106217632046), c(-0.76175674515061982, -0.49869894609611185), c(-0.62801217234072435, 0.65029420514512346), c(0.49820487179481712, 0.7456390344863711), c(0.83491024120029977, -0.3044117361832777), c(-0.074199471291343972, -0.87664463255283629), c(-0.85157057218786704, -0.17857582827016062)]),
];

pub const SPH_J: &[(Complex64, &[Complex64])] = &[
    (c(4.0, 0.5), &[c(-0.22054559311494042, -0.057584456435123205), c(0.11323719145147786, -0.12714231991294433), c(0.29243068957945228, -0.046757920557649024), c(0.23948397717590202, 0.024604773137460563), c(0.12551811453786271, 0.037572673033540635), c(0.048991662948035853, 0.023874286172513632), c(0.015216761995208212, 0.010489754374237986), c(0.0038978771863256206, 0.0036062230269646398), c(0.00083981055136237458, 0.0010265104085580896), c(0.0001533508730827014, 0.00025004270198120063), c(0.000023578496213423106, 0.000053268794905638687), c(0.0000029516517441753446, 0.000010080655670042888), c(0.00000026639613547688872, 0.000001714363653495418), c(0.0000000064503614481382753, 0.00000026435440110053931), c(-0.0000000039085384765062946, 0.000000037217604308174585), c(-0.0000000011417584208274256, 0.0000000048096547553125733), c(-0.00000000021628586043252903, 0.00000000057282308761521073), c(-0.000000000033512510338288613, 0.000000000063044583908629494), c(-0.0000000000045431382726641754, 0.0000000000064206464234464905), c(-0.00000000000055533615528294901, 0.0000000000006048763199469886), c(-0.000000000000062237234115748812, 0.000000000000052569634384138876), c(-0.0000000000000064625456467714939, 0.0000000000000041872701066499395), c(-0.00000000000000062624551204954208, 0.00000000000000030145421582276823), c(-0.000000000000000056929572484216238, 0.000000000000000019024223763166886), c(-0.0000000000000000048738952488105853, 0.00000000000000000097033930673676079), c(-0.00000000000000000039412940820370555, 0.000000000000000000027895480910926556), c(-0.000000000000000000030170259517248903, -0.0000000000000000000016637365814679205), c(-0.0000000000000000000021896094618739803, -0.00000000000000000000040011340717906165), c(-0.00000000000000000000015079896334801173, -0.000000000000000000000047690457169562773), c(-0.000000000000000000000009857717983202063, -0.000000000000000000000004542210005060058), c(-0.00000000000000000000000061129137106264192, -0.00000000000000000000000038085856518878638)]),
    (c(0.20000000000000001, 0.10000000000000001), &[c(0.99499418986643027, -0.0066466754060768522), c(0.066599548231742477, 0.032967154825537494), c(0.002003317867704368, 0.0026552439220719189), c(0.000019248343064068651, 0.00010454493885720161), c(-0.00000073511790962343856, 0.0000025375630327648107), c(-0.000000036453220745846856, 0.000000039452695553468681), c(-0.0000000008645010175121054, 0.00000000032642799644191767), c(-0.000000000013704257292762872, -0.0000000000014132831742236735), c(-0.00000000000015291528037705591, -0.00000000000009726811245195041), c(-0.0000000000000010975962432431285, -0.0000000000000018289396890535346), c(-0.0000000000000000017422934561713367, -0.000000000000000022646672879333306), c(0.000000000000000000083331992737436954, -0.00000000000000000020450765126684707), c(0.0000000000000000000014848297405712344, -0.0000000000000000000013027031387228937), c(0.000000000000000000000015824383541798903, -0.0000000000000000000000041496340040045036), c(0.00000000000000000000000012344572680383954, 0.000000000000000000000000025955033266598269), c(0.00000000000000000000000000071269690918178385, 0.0000000000000000000000000005657083072099984), c(0.0000000000000000000000000000026049817215554915, 0.0000000000000000000000000000055884581709321123), c(-0.0000000000000000000000000000000010826549395913992, 0.000000000000000000000000000000039377730377961101), c(-0.00000000000000000000000000000000011228664101051603, 0.00000000000000000000000000000000020992775383936713), c(-0.0000000000000000000000000000000000011141458518049184, 0.00000000000000000000000000000000000078862504341901807), c(-0.0000000000000000000000000000000000000073584843678303007, 0.0000000000000000000000000000000000000011293747833100383), c(-0.000000000000000000000000000000000000000036852287827690502, -0.00000000000000000000000000000000000000001186079408717027), c(-0.00000000000000000000000000000000000000000013743002910852158, -0.0000000000000000000000000000000000000000001346131219416868), c(-0.00000000000000000000000000000000000000000000029838659519317244, -0.00000000000000000000000000000000000000000000086524256641131583), c(0.00000000000000000000000000000000000000000000000054796954148357647, -0.0000000000000000000000000000000000000000000000041405954823547175), c(0.000000000000000000000000000000000000000000000000010268053191137267, -0.000000000000000000000000000000000000000000000000015163195599238498), c(0.000000000000000000000000000000000000000000000000000067358386099236129, -0.000000000000000000000000000000000000000000000000000037845385937044475), c(0.00000000000000000000000000000000000000000000000000000031375257407735951, -0.000000000000000000000000000000000000000000000000000000015145933960016738), c(0.0000000000000000000000000000000000000000000000000000000011274621811175067, 0.00000000000000000000000000000000000000000000000000000000049731733124904175), c(0.0000000000000000000000000000000000000000000000000000000000029789798227630054, 0.0000000000000000000000000000000000000000000000000000000000035968374024938304), c(0.0000000000000000000000000000000000000000000000000000000000000038705488345025861, 0.000000000000000000000000000000000000000000000000000000000000016676653467552471)]),
    (c(30.0, -1.0), &[c(-0.050562816297062496, -0.0077279768108746099), c(-0.010888973598783467, 0.038083966452736561), c(0.04934832182064882, 0.011495890306934477), c(0.019040770293081637, -0.035896258178437543), c(-0.044631523187134717, -0.0197144572607861), c(-0.032218440820472645, 0.029542665315955346), c(0.032470530080329521, 0.030141401439742887), c(0.045838494663549067, -0.016027389563964214), c(-0.0093098936296563323, -0.037383075006702554), c(-0.05040290473681298, -0.0053084999422760305), c(-0.02246457274224173, 0.0329618761641978), c(0.033926900045291955, 0.027832613100830456), c(0.047735839035174414, -0.010781163910463361), c(0.0061079594154654198, -0.035482421044191344), c(-0.041181485544918969, -0.020934536579633668), c(-0.045198737288129267, 0.01394267642145667), c(-0.005951753796951592, 0.033770860903743208), c(0.037422183826635813, 0.02294605212394441), c(0.048671155787661414, -0.0055764866927844023), c(0.022767952612806132, -0.027817381163730442), c(-0.017901585951514176, -0.029560456492193597), c(-0.045861151285594699, -0.01335168266469376), c(-0.047122568103796956, 0.0082555728709555033), c(-0.025156570933405177, 0.023367784563827019), c(0.0065353862052384995, 0.027001050215754878), c(0.034350762122227158, 0.021040403828200015), c(0.05060513038940007, 0.010672320178673099), c(0.054324625613262783, 0.00076987474530545827), c(0.048832482430679611, -0.0059462960516104362), c(0.038730295398284308, -0.0089660065429803839), c(0.027839678769097379, -0.009131111442925086)]),
];

pub const SPH_H: &[(Complex64, &[Complex64])] = &[
    (c(4.0, 0.5), &[c(-0.10079189038248979, 0.11171271044265147), c(0.090339713131350949, 0.13139169265706522), c(0.17963275786321651, -0.023024049384943393), c(0.12720459664107808, -0.18736479310979809), c(-0.00080494678223848595, -0.32721781494232552), c(-0.21960202749652733, -0.53732561165350316), c(-0.77567382699877504, -1.0533677703821815), c(-2.6839013270524254, -2.5231817227699676), c(-10.298661098780935, -7.0242718242827333), c(-44.086268840547992, -21.483702259481597), c(-208.44912987640199, -67.679840036356986), c(-1077.1669760824991, -193.67880231601169), c(-6027.0381332758475, -266.53736538667903), c(-36217.327202066316, 3189.6320409178696), c(-232029.04219107928, 51553.56368212669), c(-1574111.4248455866, 571864.79866045724), c(-11234180.945600653, 5813674.8744103835), c(-83778888.537709174, 58060077.910544552), c(-648026928.70638425, 584619645.54935256), c(-5152684004.131943, 6004229505.0046731), c(-41612664104.954661, 63239204407.453841)]),
    (c(0.69999999999999996, 0.20000000000000001), &[c(0.46031814821988937, -1.02609064232174), c(-0.80532729271876915, -1.9892371657089383), c(-5.9032042126251317, -5.9441011923150694), c(-49.393382021437896, -26.126140118211083), c(-519.76503742990547, -105.12637380621558), c(-6485.9787097891144, 541.75050312702582), c(-91461.716016337502, 34898.771724021599), c(-1392692.906698164, 1047343.6916309751), c(-21571263.652734222, 28597530.44001132), c(-299487371.19046929, 779429842.45069185), c(-1905501633.5559681, 21677947592.424112), c(119236290908.75378, 615577054062.39749), c(8966733298459.9047, 17643045886793.109), c(462395975326098.6, 497346001297975.13), c(21547547117026691.0, 13006698761227919.0), c(967186772497813140.0, 261880411685818890.0), c(42641870406948301000.0, -604993596693628230.0), c(1850040829571517000000.0, -557642440354104010000.0), c(78113024623976900000000.0, -50211707451075325000000.0), c(3114302228270512100000000.0, -3543818971145080100000000.0), c(108183515007174810000000000.0, -228323024694003060000000000.0)]),
    (c(12.0, -0.5), &[c(-0.068771370625331368, -0.1188054713699528), c(-0.12411468254374136, 0.058649697545594111), c(0.03718660031064797, 0.13215186365990618), c(0.13729191900467108, -0.0030373695014277962), c(0.042835250570789592, -0.1305894187490125), c(-0.10114731279312285, -0.093398669301517069), c(-0.13183180244277484, 0.041265782227955801), c(-0.043282418683858696, 0.13208536123692829), c(0.070955022045051951, 0.12130438680163277), c(0.13647990367087235, 0.043645748606510375), c(0.14188923046931233, -0.043330107653226167), c(0.1145499209989757, -0.10901386097174583), c(0.085975154951085387, -0.15611877648343677), c(0.077783050864931238, -0.20821971620775132), c(0.10822016323984954, -0.30428411339271475), c(0.21388236647761299, -0.51498083210203664), c(0.49868758876884094, -1.0007952132038511), c(1.2696074509943077, -2.1753939284805573), c(3.4618290362988816, -5.1790822188199525), c(10.050081375105329, -13.321789211793478), c(30.945193308098114, -36.68310678849231)]),
];

pub const ERFC: &[(f64, f64)] = &[
    (0f64, 1.0),
    (0.5f64, 0.47950012218695346232),
    (1f64, 0.15729920705028513066),
    (2.5f64, 0.00040695201744495893956),
    (4f64, 1.5417257900280018852e-8),
    (6f64, 2.1519736712498913117e-17),
    (-1.5f64, 1.9661051464753107271),
    (10f64, 2.088487583762544757e-45),
    (27f64, 5.237048923789255685e-319),
];

pub const KERNEL_PAIRS: &[([Complex64; 3], [Complex64; 3], Complex64, Complex64, Complex64, Complex64)] = &[
    ([c(-0.70466894066735053, -0.13966033043019924), c(0.60373789215941498, -0.1710254853329829), c(0.14352801722675679, -0.053724433234965785)], [c(-1.7680043009011728, 0.0029742932757680918), c(-1.8500173662320605, -0.026541726535045662), c(-1.7205783057015243, -0.16371479466245398)], c(0.30716361269983188, 0.0087420535270659592), c(-0.15234079121816747, -0.31131414561794841), c(0.98579511377246958, -0.070715883391033884), c(-0.49084281798127759, 0.23804728398805284)),
    ([c(-0.30192324342994414, 0.13074084986881523), c(-1.5047921554014176, -0.11070441415719419), c(0.50973288962235719, 0.17908357698280225)], [c(0.30841179446999467, -0.041327810139687948), c(1.9050204223716802, -0.18136692775289751), c(1.4338738361947181, -0.084156285467329506)], c(0.27917007229281404, 0.012874827696043226), c(-0.0067609482299196657, -0.34619212608306197), c(1.2418162795663641, -0.028883272110066353), c(-0.36240018243426776, -0.22657322459881253)),
    ([c(-1.4229796665702499, -0.15288310476865266), c(-0.76607270359226254, 0.12645054364801256), c(-1.2770944803042501, 0.03264006546498649)], [c(0.55565387570473623, -0.051040982909707516), c(0.19097786283823126, -0.17488441001067076), c(-1.7615953201350694, -0.11761651487226939)], c(0.44982811101012642, 0.0012820562713635568), c(-0.4395878994338443, 0.1116709688796337), c(0.77727465268578551, -0.01836149283149745), c(-0.2108985275207903, 0.44972705800252429)),
    ([c(0.72159989272714364, -0.028963077732238857), c(-0.74341131849283393, 0.034224745403055479), c(-0.18726249451689858, -0.080093201254527069)], [c(1.1775179260899646, 0.079597773491828505), c(-1.0236139571113885, 0.029769484103468413), c(0.10078601524580577, 0.15005499822937157)], c(1.5276475197140025, -0.5192120294314128), c(1.1289026728372657, 0.52490298313832189), c(-0.61426094128240617, 0.17702295591205061), c(0.74990796026302789, -0.22890835107215582)),
    ([c(0.91778115775687041, -0.084824894043925403), c(1.9206993899703284, -0.15277368869801516), c(-0.32750871285909122, 0.10285637182609975)], [c(-1.3920618613579809, -0.0044147598096777596), c(-1.8431709718102494, 0.067286342613758099), c(1.0582834648512525, 0.02921037611095359)], c(0.21548116595705632, 0.011227273293235022), c(0.28845642739442568, -0.062826449596753514), c(1.4865557095391841, -0.051954011905975539), c(0.10969441360045535, -0.43459850387354654)),
    ([c(1.501911247323553, -0.07450099486076131), c(0.78118146509463715, 0.037747950842007383), c(0.31958081712996877, -0.01751786747943479)], [c(1.3598711220501656, 0.17787243804317499), c(-0.10360665032142213, 0.065660882189869763), c(-1.7573222896111211, 0.080596808521769536)], c(0.44350612954291912, 0.023184482487760358), c(-0.51030999051630353, 0.085584638634856177), c(-0.14489914203781707, -0.081253754160559476), c(0.77303012161906028, 0.22344480264267083)),
    ([c(0.58851541811067509, 0.19723837578665365), c(1.2876991464388596, -0.086161787162340311), c(-0.45683423021315672, 0.067461086353675259)], [c(-1.9097482877776457, -0.015321885480093667), c(-1.3278064843738218, -0.15316168220730725), c(-1.7641823226747584, 0.10729319538900833)], c(0.25970011890760281, -0.011503412941215925), c(0.049386549663676473, -0.20241042422180238), c(1.2866436562782067, 0.053982181942962928), c(-0.21357955063643985, -0.18742193382584842)),
    ([c(-1.4826391119252631, -0.10095406652123429), c(-0.43620118746709169, 0.14856878965051978), c(-1.6776747951994455, -0.020325039620267604)], [c(0.19775963657614959, 0.153353530576605), c(1.2771193513429653, 0.14559378787940608), c(-0.88631574194441143, -0.033881393115320568)], c(0.39526177947576703, -0.025626036154199372), c(-0.31955587795546554, -0.022038729409885891), c(0.87519111096947341, 0.073612085052541321), c(-0.22402869391685625, 0.27695525238514212)),
    ([c(-0.56491533867350086, 0.15367713087928681), c(1.830924815855965, -0.13963163768355644), c(-1.2951290860385187, -0.1072172532721857)], [c(-1.0666556652765555, -0.0060149078634573472), c(0.35649401492902255, -0.094901352280584828), c(-1.9836255864597443, -0.032421399549868835)], c(0.59047908940024521, 0.0076869538155852835), c(-0.36459288216473091, 0.48617545662384189), c(0.43739147898492917, 0.0059092823553941558), c(0.21507924305263444, 0.50493096711744874)),
    ([c(-0.52298570842109848, 0.026536489482556769), c(1.8123917021003813, 0.076197462854391163), c(0.061965732283113528, 0.047037099763651058)], [c(0.70480032979800544, -0.17840284271048393), c(1.5981320402318087, 0.11198779628242911), c(1.4980527365379062, 0.11914924847862646)], c(0.52795629893170686, 0.023004662541411534), c(-0.47164807635133985, 0.35144739300996901), c(0.23395285096152371, -0.16539657125074752), c(0.53711075876982153, 0.6064988567364256)),
];

/// `(t, ψ_{1/20,3,13}(t), ψ_{0.2,0.75,12}(t), γ_2(t))`.
pub const WOBBLE: &[(f64, f64, f64, f64)] = &[
    (0.0f64, 1.95, 1.8, -2.0),
    (0.29999999999999999f64, 1.905, 1.755, 1.4665150396953861),
    (-1.7f64, 2.205, 2.0549999999999938, -0.85428810695790636),
    (5.9000000000000004f64, 1.0649999999999999, 0.91500160836824156, 0.050423644378318238),
    (12.5f64, 0.078308081501740624, 0.030242635802620591, 9.8978492914813261e-5),
    (13.0f64, 0.014104739588693907, 0.020923936593166851, -4.8987353199475014e-5),
    (-13.199999999999999f64, 3.8941608898191318, 3.5806481239665198, -3.905491418910913e-5),
    (17.0f64, 7.5886124725793204e-34, 4.982191188261005e-5, -1.7527751698526872e-8),
    (-20.0f64, 3.9, 3.5999999991407404, 8.1296910774682077e-11),
];

/// `(dim, κ, k, w, eps, P)`: one past the last order whose Helmholtz
/// truncation term exceeds `eps`.
pub const TERM_COUNTS: &[(usize, f64, u8, f64, f64, usize)] = &[
    (2, 6.2831853071795865, 1, 7.5075, 1e-6, 48),
    (2, 6.2831853071795865, 1, 7.5075, 1e-9, 55),
    (2, 6.2831853071795865, 1, 0.25, 1e-12, 31),
    (2, 30.0, 2, 1.0, 1e-6, 34),
    (3, 2.0, 2, 11.7, 1e-6, 37),
    (3, 2.0, 2, 2.9, 1e-9, 22),
    (3, 0.5, 1, 1.0, 1e-12, 51),
    (3, 5.0, 1, 4.0, 1e-6, 35),
];
