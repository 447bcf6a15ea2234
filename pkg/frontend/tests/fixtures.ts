/** Recorded responses from the real service, captured against the demo
 * catalog. The fake transport in fake-service.ts serves these verbatim,
 * so anything the UI renders traces back to a genuine server payload. */

export const recorded = {
  "session": {
    "session": "680da380de574501bde1bf8534532f6d",
    "state": "choosing_occasion"
  },
  "occasionAck": {
    "session": "680da380de574501bde1bf8534532f6d",
    "state": "choosing_items",
    "occasion": "casual"
  },
  "itemsPages": {
    "top_wear": [
      {
        "session": "680da380de574501bde1bf8534532f6d",
        "type": "top_wear",
        "page": 0,
        "items": [
          {
            "id": "tw000",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 2662,
            "title": "red solid tshirt"
          },
          {
            "id": "tw002",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 2010,
            "title": "blue checked tshirt"
          },
          {
            "id": "tw004",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 1745,
            "title": "red striped tshirt"
          },
          {
            "id": "tw006",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 2384,
            "title": "blue solid tshirt"
          },
          {
            "id": "tw008",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 438,
            "title": "checked red tshirt"
          },
          {
            "id": "tw010",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 1012,
            "title": "blue striped tshirt"
          },
          {
            "id": "tw012",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 2581,
            "title": "red solid tshirt"
          },
          {
            "id": "tw014",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 1549,
            "title": "blue checked tshirt"
          }
        ],
        "exhausted": false
      },
      {
        "session": "680da380de574501bde1bf8534532f6d",
        "type": "top_wear",
        "page": 1,
        "items": [
          {
            "id": "tw016",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 628,
            "title": "red striped tshirt"
          },
          {
            "id": "tw018",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 597,
            "title": "blue solid tshirt"
          },
          {
            "id": "tw020",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 2341,
            "title": "checked red tshirt"
          },
          {
            "id": "tw022",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 1154,
            "title": "blue striped tshirt"
          },
          {
            "id": "tw024",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 2098,
            "title": "red solid tshirt"
          },
          {
            "id": "tw026",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 2776,
            "title": "blue checked tshirt"
          },
          {
            "id": "tw028",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 1495,
            "title": "red striped tshirt"
          },
          {
            "id": "tw030",
            "type": "top_wear",
            "category": "tshirt",
            "occasion": "casual",
            "price": 1756,
            "title": "blue solid tshirt"
          }
        ],
        "exhausted": false
      }
    ],
    "bottom_wear": [
      {
        "session": "680da380de574501bde1bf8534532f6d",
        "type": "bottom_wear",
        "page": 0,
        "items": [
          {
            "id": "bw000",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 1511,
            "title": "jeans red solid"
          },
          {
            "id": "bw002",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 753,
            "title": "blue checked jeans"
          },
          {
            "id": "bw004",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 2825,
            "title": "jeans red striped"
          },
          {
            "id": "bw006",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 2421,
            "title": "blue jeans solid"
          },
          {
            "id": "bw008",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 2458,
            "title": "checked jeans red"
          },
          {
            "id": "bw010",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 1503,
            "title": "blue jeans striped"
          },
          {
            "id": "bw012",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 1065,
            "title": "jeans red solid"
          },
          {
            "id": "bw014",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 1348,
            "title": "blue checked jeans"
          }
        ],
        "exhausted": false
      },
      {
        "session": "680da380de574501bde1bf8534532f6d",
        "type": "bottom_wear",
        "page": 1,
        "items": [
          {
            "id": "bw016",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 2883,
            "title": "jeans red striped"
          },
          {
            "id": "bw018",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 642,
            "title": "blue jeans solid"
          },
          {
            "id": "bw020",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 2822,
            "title": "checked jeans red"
          },
          {
            "id": "bw022",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 2604,
            "title": "blue jeans striped"
          },
          {
            "id": "bw024",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 2202,
            "title": "jeans red solid"
          },
          {
            "id": "bw026",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 1622,
            "title": "blue checked jeans"
          },
          {
            "id": "bw028",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 1943,
            "title": "jeans red striped"
          },
          {
            "id": "bw030",
            "type": "bottom_wear",
            "category": "jeans",
            "occasion": "casual",
            "price": 2059,
            "title": "blue jeans solid"
          }
        ],
        "exhausted": false
      }
    ],
    "foot_wear": [
      {
        "session": "680da380de574501bde1bf8534532f6d",
        "type": "foot_wear",
        "page": 0,
        "items": [
          {
            "id": "fw000",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 2244,
            "title": "red solid trainer"
          },
          {
            "id": "fw002",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 1971,
            "title": "blue checked trainer"
          },
          {
            "id": "fw004",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 2146,
            "title": "red striped trainer"
          },
          {
            "id": "fw006",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 2043,
            "title": "blue solid trainer"
          },
          {
            "id": "fw008",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 759,
            "title": "checked red trainer"
          },
          {
            "id": "fw010",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 2084,
            "title": "blue striped trainer"
          },
          {
            "id": "fw012",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 1935,
            "title": "red solid trainer"
          },
          {
            "id": "fw014",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 1041,
            "title": "blue checked trainer"
          }
        ],
        "exhausted": false
      },
      {
        "session": "680da380de574501bde1bf8534532f6d",
        "type": "foot_wear",
        "page": 1,
        "items": [
          {
            "id": "fw016",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 1415,
            "title": "red striped trainer"
          },
          {
            "id": "fw018",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 1462,
            "title": "blue solid trainer"
          },
          {
            "id": "fw020",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 1880,
            "title": "checked red trainer"
          },
          {
            "id": "fw022",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 1441,
            "title": "blue striped trainer"
          },
          {
            "id": "fw024",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 1554,
            "title": "red solid trainer"
          },
          {
            "id": "fw026",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 1569,
            "title": "blue checked trainer"
          },
          {
            "id": "fw028",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 1813,
            "title": "red striped trainer"
          },
          {
            "id": "fw030",
            "type": "foot_wear",
            "category": "trainer",
            "occasion": "casual",
            "price": 2796,
            "title": "blue solid trainer"
          }
        ],
        "exhausted": false
      }
    ]
  },
  "recommendation": {
    "session": "680da380de574501bde1bf8534532f6d",
    "budget": 9000,
    "total_price": 8669,
    "items": [
      {
        "id": "bw000",
        "type": "bottom_wear",
        "category": "jeans",
        "occasion": "casual",
        "price": 1511,
        "title": "jeans red solid"
      },
      {
        "id": "bw036",
        "type": "bottom_wear",
        "category": "jeans",
        "occasion": "casual",
        "price": 865,
        "title": "jeans red solid"
      },
      {
        "id": "fw000",
        "type": "foot_wear",
        "category": "trainer",
        "occasion": "casual",
        "price": 2244,
        "title": "red solid trainer"
      },
      {
        "id": "fw008",
        "type": "foot_wear",
        "category": "trainer",
        "occasion": "casual",
        "price": 759,
        "title": "checked red trainer"
      },
      {
        "id": "tw000",
        "type": "top_wear",
        "category": "tshirt",
        "occasion": "casual",
        "price": 2662,
        "title": "red solid tshirt"
      },
      {
        "id": "tw016",
        "type": "top_wear",
        "category": "tshirt",
        "occasion": "casual",
        "price": 628,
        "title": "red striped tshirt"
      }
    ],
    "outfits": [
      {
        "id": "outfit-0",
        "items": {
          "top_wear": "tw000",
          "bottom_wear": "bw000",
          "foot_wear": "fw000"
        },
        "price": 6417,
        "c1": 0.8033173592515586,
        "c2": 1,
        "per_pair": {
          "tw-bw": {
            "p1": 0.8474415862103839,
            "score": 1
          },
          "bw-fw": {
            "p1": 0.8005422231780663,
            "score": 1
          },
          "tw-fw": {
            "p1": 0.7619682683662256,
            "score": 1
          }
        }
      },
      {
        "id": "outfit-1",
        "items": {
          "top_wear": "tw000",
          "bottom_wear": "bw000",
          "foot_wear": "fw008"
        },
        "price": 4932,
        "c1": 0.8298329988900353,
        "c2": 1,
        "per_pair": {
          "tw-bw": {
            "p1": 0.8474415862103839,
            "score": 1
          },
          "bw-fw": {
            "p1": 0.8272059764773465,
            "score": 1
          },
          "tw-fw": {
            "p1": 0.8148514339823755,
            "score": 1
          }
        }
      },
      {
        "id": "outfit-2",
        "items": {
          "top_wear": "tw000",
          "bottom_wear": "bw036",
          "foot_wear": "fw000"
        },
        "price": 5771,
        "c1": 0.8050250291485207,
        "c2": 1,
        "per_pair": {
          "tw-bw": {
            "p1": 0.8449102096852733,
            "score": 1
          },
          "bw-fw": {
            "p1": 0.8081966093940631,
            "score": 1
          },
          "tw-fw": {
            "p1": 0.7619682683662256,
            "score": 1
          }
        }
      },
      {
        "id": "outfit-3",
        "items": {
          "top_wear": "tw000",
          "bottom_wear": "bw036",
          "foot_wear": "fw008"
        },
        "price": 4286,
        "c1": 0.8299559487682459,
        "c2": 1,
        "per_pair": {
          "tw-bw": {
            "p1": 0.8449102096852733,
            "score": 1
          },
          "bw-fw": {
            "p1": 0.8301062026370889,
            "score": 1
          },
          "tw-fw": {
            "p1": 0.8148514339823755,
            "score": 1
          }
        }
      },
      {
        "id": "outfit-4",
        "items": {
          "top_wear": "tw016",
          "bottom_wear": "bw000",
          "foot_wear": "fw000"
        },
        "price": 4383,
        "c1": 0.7996952149367095,
        "c2": 1,
        "per_pair": {
          "tw-bw": {
            "p1": 0.8197704695195341,
            "score": 1
          },
          "bw-fw": {
            "p1": 0.8005422231780663,
            "score": 1
          },
          "tw-fw": {
            "p1": 0.7787729521125282,
            "score": 1
          }
        }
      },
      {
        "id": "outfit-5",
        "items": {
          "top_wear": "tw016",
          "bottom_wear": "bw000",
          "foot_wear": "fw008"
        },
        "price": 2898,
        "c1": 0.8235260642872566,
        "c2": 1,
        "per_pair": {
          "tw-bw": {
            "p1": 0.8197704695195341,
            "score": 1
          },
          "bw-fw": {
            "p1": 0.8272059764773465,
            "score": 1
          },
          "tw-fw": {
            "p1": 0.8236017468648893,
            "score": 1
          }
        }
      },
      {
        "id": "outfit-6",
        "items": {
          "top_wear": "tw016",
          "bottom_wear": "bw036",
          "foot_wear": "fw000"
        },
        "price": 3737,
        "c1": 0.8025590720231506,
        "c2": 1,
        "per_pair": {
          "tw-bw": {
            "p1": 0.8207076545628603,
            "score": 1
          },
          "bw-fw": {
            "p1": 0.8081966093940631,
            "score": 1
          },
          "tw-fw": {
            "p1": 0.7787729521125282,
            "score": 1
          }
        }
      },
      {
        "id": "outfit-7",
        "items": {
          "top_wear": "tw016",
          "bottom_wear": "bw036",
          "foot_wear": "fw008"
        },
        "price": 2252,
        "c1": 0.8248052013549462,
        "c2": 1,
        "per_pair": {
          "tw-bw": {
            "p1": 0.8207076545628603,
            "score": 1
          },
          "bw-fw": {
            "p1": 0.8301062026370889,
            "score": 1
          },
          "tw-fw": {
            "p1": 0.8236017468648893,
            "score": 1
          }
        }
      }
    ],
    "generation_complete": false,
    "generated_outfits": 70,
    "dropped_over_budget": 0
  }
} as const;

export type Recorded = typeof recorded;
