{"kind":"cs","events":["a","b","c"],"configurations":[[],["a"],["b"],["a","b"],["a","c"],["b","c"],["a","b","c"]]}
