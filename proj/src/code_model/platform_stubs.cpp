#include "oraclegen/code_model.hpp"

namespace oraclegen {

// Same line-delimited JSON format as user signature files. Generic type
// variables are already erased to Object.
std::string_view platform_stub_signatures() {
    static constexpr std::string_view stubs = R"JSONL({"qualifiedName":"java.lang.Object","methods":["public boolean equals(Object arg0)","public String toString()","public final native Class getClass()","public native int hashCode()"]}
{"qualifiedName":"java.lang.Comparable","interface":true,"methods":["public int compareTo(Object arg0)"]}
{"qualifiedName":"java.lang.CharSequence","interface":true,"methods":["public int length()","public char charAt(int index)","public boolean isEmpty()"]}
{"qualifiedName":"java.lang.String","superTypes":["java.lang.CharSequence","java.lang.Comparable"],"methods":["public int length()","public boolean isEmpty()","public char charAt(int index)","public boolean contains(CharSequence s)","public boolean startsWith(String prefix)","public boolean endsWith(String suffix)","public boolean equalsIgnoreCase(String anotherString)","public int indexOf(String str)","public String substring(int beginIndex)","public String trim()","public String toLowerCase()","public String toUpperCase()","public boolean isBlank()"]}
{"qualifiedName":"java.lang.Class","methods":["public String getName()","public String getSimpleName()","public native boolean isArray()","public native boolean isInterface()","public native boolean isPrimitive()","public boolean isEnum()","public native boolean isInstance(Object obj)","public native boolean isAssignableFrom(Class cls)","Object getClassData()","public ClassLoader getClassLoader()","public native Class getSuperclass()","public Class getComponentType()"]}
{"qualifiedName":"java.lang.ClassLoader","methods":["public final ClassLoader getParent()"]}
{"qualifiedName":"java.lang.Iterable","interface":true,"methods":["public Iterator iterator()"]}
{"qualifiedName":"java.util.Iterator","interface":true,"methods":["public boolean hasNext()","public Object next()","public void remove()"]}
{"qualifiedName":"java.util.Collection","interface":true,"superTypes":["java.lang.Iterable"],"methods":["public int size()","public boolean isEmpty()","public boolean contains(Object o)","public boolean containsAll(Collection c)","public Object[] toArray()","public Stream stream()"]}
{"qualifiedName":"java.util.List","interface":true,"superTypes":["java.util.Collection"],"methods":["public Object get(int index)","public int indexOf(Object o)","public int lastIndexOf(Object o)"]}
{"qualifiedName":"java.util.Set","interface":true,"superTypes":["java.util.Collection"]}
{"qualifiedName":"java.util.Map","interface":true,"methods":["public int size()","public boolean isEmpty()","public boolean containsKey(Object key)","public boolean containsValue(Object value)","public Object get(Object key)","public Set keySet()","public Collection values()"]}
{"qualifiedName":"java.util.Arrays","methods":["public static Stream stream(Object[] array)","public static List asList(Object[] a)"]}
{"qualifiedName":"java.util.stream.Stream","interface":true}
{"qualifiedName":"java.lang.Number","methods":["public abstract int intValue()","public abstract long longValue()","public abstract float floatValue()","public abstract double doubleValue()"]}
{"qualifiedName":"java.lang.Integer","superTypes":["java.lang.Number","java.lang.Comparable"],"fields":["public static final int MAX_VALUE","public static final int MIN_VALUE"]}
{"qualifiedName":"java.lang.Long","superTypes":["java.lang.Number","java.lang.Comparable"],"fields":["public static final long MAX_VALUE","public static final long MIN_VALUE"]}
{"qualifiedName":"java.lang.Short","superTypes":["java.lang.Number","java.lang.Comparable"],"fields":["public static final short MAX_VALUE","public static final short MIN_VALUE"]}
{"qualifiedName":"java.lang.Byte","superTypes":["java.lang.Number","java.lang.Comparable"],"fields":["public static final byte MAX_VALUE","public static final byte MIN_VALUE"]}
{"qualifiedName":"java.lang.Double","superTypes":["java.lang.Number","java.lang.Comparable"],"fields":["public static final double MAX_VALUE","public static final double MIN_VALUE"],"methods":["public boolean isNaN()","public boolean isInfinite()","public static boolean isNaN(double v)"]}
{"qualifiedName":"java.lang.Float","superTypes":["java.lang.Number","java.lang.Comparable"],"fields":["public static final float MAX_VALUE","public static final float MIN_VALUE"],"methods":["public boolean isNaN()","public static boolean isNaN(float v)"]}
{"qualifiedName":"java.lang.Boolean","superTypes":["java.lang.Comparable"],"methods":["public boolean booleanValue()"]}
{"qualifiedName":"java.lang.Character","superTypes":["java.lang.Comparable"],"methods":["public char charValue()","public static boolean isDigit(char ch)","public static boolean isLetter(char ch)","public static boolean isWhitespace(char ch)"]}
)JSONL";
    return stubs;
}

} // namespace oraclegen
