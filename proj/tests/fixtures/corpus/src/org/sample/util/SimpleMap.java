package org.sample.util;

import java.util.Iterator;

/**
 * Hash table based map with a configurable load factor.
 */
public class SimpleMap<K, V> implements Iterable<K> {

    public static final int DEFAULT_CAPACITY = 16;

    private Object[] table;
    private int size;
    private float loadFactor;

    /**
     * Constructs an empty map with the specified initial capacity and load factor.
     *
     * @param initialCapacity the initial capacity
     * @param loadFactor the load factor
     * @throws IllegalArgumentException if the initial capacity is negative
     * @throws IllegalArgumentException if the load factor is nonpositive
     */
    public SimpleMap(int initialCapacity, float loadFactor) {
        if (initialCapacity < 0 || loadFactor <= 0) {
            throw new IllegalArgumentException("bad arguments");
        }
        this.table = new Object[initialCapacity];
        this.loadFactor = loadFactor;
    }

    /**
     * Returns the number of key-value mappings in this map.
     *
     * @return the number of key-value mappings in this map
     */
    public int size() {
        return size;
    }

    /**
     * Returns true if this map contains no key-value mappings.
     *
     * @return true if this map contains no key-value mappings
     */
    public boolean isEmpty() {
        return size == 0;
    }

    /**
     * Returns the value mapped to the key, or null.
     *
     * @param key the key whose associated value is to be returned
     * @return the value to which the specified key is mapped, or null if
     *         this map contains no mapping for the key
     * @throws NullPointerException if the specified key is null
     */
    public V get(Object key) {
        if (key == null) {
            throw new NullPointerException();
        }
        return null;
    }

    /**
     * Returns an iterator over the keys.
     *
     * @return an iterator over the keys, never null
     */
    public Iterator<K> iterator() {
        return null;
    }

    /**
     * Removes every mapping.
     */
    public void clear() {
        size = 0;
    }

    /**
     * Returns the load factor.
     *
     * @return the load factor, always positive
     */
    public float getLoadFactor() {
        return loadFactor;
    }

    /**
     * Creates a map of the given capacity.
     *
     * @param capacity the capacity
     * @return a new empty map
     * @throws IllegalArgumentException if capacity is negative
     */
    public static SimpleMap<String, String> withCapacity(int capacity) {
        return new SimpleMap<>(capacity, 0.75f);
    }
}
